//! Acceptance checks for the whole crate, one test per numbered criterion.
//! Each test prints a single PASS line with its runtime (visible under
//! `--nocapture`); the test name doubles as the pass/fail line in the
//! default harness output. Randomized checks use fixed seeds.

use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use sumsetlab::complements::{
    dependents, first_uncovered, greedy_min_complement, ElementFinding, Status,
};
use sumsetlab::constructions::{
    extract_complement, finite_complement_base, has_3ap, is_ternary_01, prop11_set, ternary_fix,
    ternary_01_values, inherit_complement,
};
use sumsetlab::modular::{search_s_necessary, search_s_sufficient, EpClasses, ResidueSet};
use sumsetlab::oracle::{materialize, sumset_padding, window_sumset, Window, WindowSet};
use sumsetlab::sets::{sumset_contains, EpForm, PeriodicSet};
use sumsetlab::value::SetValue;

fn win(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).unwrap()
}

fn random_residues(rng: &mut ChaCha8Rng, period: i64, density: f64) -> ResidueSet {
    let mut s = ResidueSet::empty(period).unwrap();
    for r in 0..period {
        if rng.random_bool(density) {
            s.insert(r);
        }
    }
    s
}

/// Random canonical set: period up to 6, explicit middle inside [-50, 50].
fn random_periodic(rng: &mut ChaCha8Rng, force_low: bool) -> PeriodicSet {
    let period = rng.random_range(1..=6);
    let mut low = random_residues(rng, period, 0.4);
    if force_low && low.is_empty() {
        low.insert(rng.random_range(0..period));
    }
    let high = random_residues(rng, period, 0.4);
    let mid_lo = rng.random_range(-50..=20);
    let mid_hi = rng.random_range(mid_lo..=50);
    let mid: Vec<i64> = (mid_lo..mid_hi)
        .filter(|_| rng.random_bool(0.35))
        .collect();
    PeriodicSet::from_parts(
        period,
        &low.members(),
        &high.members(),
        mid_lo,
        mid_hi,
        &mid,
    )
    .unwrap()
}

fn finish(name: &str, start: Instant, detail: String) {
    println!("[acceptance] {name}: PASS in {:?} ({detail})", start.elapsed());
}

#[test]
fn criterion_01_core_ops_match_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC01);
    let probe = win(-200, 200);
    for round in 0..1000 {
        let s = random_periodic(&mut rng, false);
        let t = random_periodic(&mut rng, false);
        let shift = rng.random_range(-30..=30);

        let union = s.union(&t).unwrap();
        let inter = s.intersect(&t).unwrap();
        let diff = s.difference(&t).unwrap();
        let neg = s.negate();
        let moved = s.translate(shift);
        for z in probe.lo()..=probe.hi() {
            assert_eq!(union.member(z), s.member(z) || t.member(z), "union at {z} round {round}");
            assert_eq!(inter.member(z), s.member(z) && t.member(z), "intersect at {z} round {round}");
            assert_eq!(diff.member(z), s.member(z) && !t.member(z), "difference at {z} round {round}");
            assert_eq!(neg.member(z), s.member(-z), "negate at {z} round {round}");
            assert_eq!(moved.member(z), s.member(z - shift), "translate at {z} round {round}");
        }

        let sum = s.sumset(&t).unwrap();
        let pad = sumset_padding(&s, &t).unwrap();
        let sx = materialize(&s, probe.pad(pad).unwrap());
        let tx = materialize(&t, probe.pad(pad).unwrap());
        let oracle = window_sumset(&sx, &tx, probe);
        for z in probe.lo()..=probe.hi() {
            assert_eq!(
                sum.member(z),
                oracle.contains(z),
                "sumset at {z} round {round}: s = {s:?}, t = {t:?}"
            );
            assert_eq!(
                sumset_contains(&s, &t, z),
                oracle.contains(z),
                "pointwise sumset at {z} round {round}"
            );
        }
    }
    assert!(start.elapsed() < Duration::from_secs(30), "took {:?}", start.elapsed());
    finish("criterion 1", start, "1000 random pairs, all core ops exact on [-200, 200]".into());
}

fn random_finite_c(rng: &mut ChaCha8Rng) -> Vec<i64> {
    let len = rng.random_range(1..=8);
    let base = rng.random_range(-40..=40);
    let mut c: Vec<i64> = (0..len).map(|_| base + rng.random_range(0..=30)).collect();
    c.sort_unstable();
    c.dedup();
    c
}

#[test]
fn criterion_02_finite_interval_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC02);
    for _ in 0..500 {
        let c = random_finite_c(&mut rng);
        let k = c.windows(2).map(|p| p[1] - p[0]).max().unwrap_or(0);
        let c1 = c[0];
        let cn = *c.last().unwrap();
        let cs = PeriodicSet::finite(c.iter().copied());
        let block = PeriodicSet::finite(1..=k + 1);
        let sum = cs.sumset(&block).unwrap();
        let interval = PeriodicSet::finite(c1 + 1..=cn + k + 1);
        assert_eq!(sum, interval, "C = {c:?}, k = {k}");
        // oracle cross-check on a window straddling the interval
        let probe = win(c1 - 5, cn + k + 5);
        let oracle = window_sumset(
            &materialize(&cs, win(c1, cn)),
            &materialize(&block, win(1, k + 1)),
            probe,
        );
        for z in probe.lo()..=probe.hi() {
            assert_eq!(sum.member(z), oracle.contains(z), "C = {c:?}, z = {z}");
        }
    }
    finish("criterion 2", start, "500 random finite C: C + [1, k+1] is exactly the shifted interval".into());
}

#[test]
fn criterion_03_finite_base_builder() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC03);
    for _ in 0..100 {
        let c = random_finite_c(&mut rng);
        let cs = PeriodicSet::finite(c.iter().copied());
        let probe = finite_complement_base(&c, i64::MAX / 4).unwrap();
        let fill_to = probe.tail_start + rng.random_range(0..=20);
        let out = finite_complement_base(&c, fill_to).unwrap();

        let sum = cs.sumset(&out.base).unwrap();
        for z in -300..=fill_to {
            assert!(sum.member(z), "C = {c:?}: {z} uncovered");
        }
        assert!(sum.is_full(), "C = {c:?}: coverage has a hole somewhere");

        assert_eq!(out.witnesses.len(), c.len());
        for (ci, zi) in out.witnesses.iter().copied() {
            let rest = PeriodicSet::finite(c.iter().copied().filter(|&x| x != ci));
            assert!(
                !sumset_contains(&rest, &out.base, zi),
                "C = {c:?}: witness {zi} for {ci} still covered after removal"
            );
        }
    }
    assert!(start.elapsed() < Duration::from_secs(30), "took {:?}", start.elapsed());
    finish("criterion 3", start, "100 random finite C: base covers everything, every element has its witness".into());
}

#[test]
fn criterion_04_ap_free_self_complement_family() {
    let start = Instant::now();
    let limit = 3i64.pow(8);
    let w_set = prop11_set(limit).unwrap();

    assert_eq!(has_3ap(&w_set), None, "generated family contains a 3-AP");

    let center = win(-1000, 1000);
    let sum = window_sumset(&w_set, &w_set, center);
    assert_eq!(sum.first_missing(center), None, "W + W misses part of [-1000, 1000]");

    for z in 0..=limit {
        let fix = ternary_fix(z).unwrap();
        assert!(is_ternary_01(fix.fixed), "z = {z}: repaired value leaves the family");
        assert!(is_ternary_01(fix.fixed - z), "z = {z}: repair amount leaves the family");
    }

    let a_vals = ternary_01_values(limit);
    let a_win = win(0, 2 * limit);
    let a_set = WindowSet::from_members(a_win, a_vals).unwrap();
    let a_sum = window_sumset(&a_set, &a_set, win(0, 3i64.pow(7)));
    assert_eq!(a_sum.first_missing(win(0, 3i64.pow(7))), None, "A + A misses part of [0, 3^7]");

    assert!(start.elapsed() < Duration::from_secs(60), "took {:?}", start.elapsed());
    finish("criterion 4", start, "limit 3^8: 3-AP-free, W + W and A + A cover, every z repairs".into());
}

#[test]
fn criterion_05_double_point_law() {
    let start = Instant::now();
    let universe: Vec<i64> = (-12..=12).collect();
    let probe = win(-12, 12);
    let mut checked = 0u64;
    // every subset of [-12, 12] with at most 6 elements, by size
    let mut stack: Vec<(usize, Vec<i64>)> = vec![(0, Vec::new())];
    while let Some((next, members)) = stack.pop() {
        let ws = WindowSet::from_members(probe, members.iter().copied()).unwrap();
        let mut any_centered = false;
        for &w in &members {
            let reps = members
                .iter()
                .filter(|&&x| x <= w && members.contains(&(2 * w - x)))
                .count();
            let unique = reps == 1;
            let centered = (1..=24).any(|d| ws.contains(w - d) && ws.contains(w + d));
            any_centered |= centered;
            assert_eq!(
                unique, !centered,
                "W = {members:?}, w = {w}: doubled-point uniqueness disagrees with centered 3-AP"
            );
        }
        assert_eq!(
            has_3ap(&ws).is_some(),
            any_centered,
            "W = {members:?}: scanner disagrees with pointwise law"
        );
        checked += 1;
        if members.len() < 6 {
            for (i, &v) in universe.iter().enumerate().skip(next) {
                let mut bigger = members.clone();
                bigger.push(v);
                stack.push((i + 1, bigger));
            }
        }
    }
    assert_eq!(checked, 245_506, "subset enumeration miscounted");
    finish("criterion 5", start, format!("{checked} subsets: unique doubling = no centered 3-AP"));
}

fn pipeline_scenario() -> (EpForm, PeriodicSet, ResidueSet, Window) {
    let g_vals: Vec<i64> = (0..).map(|j| j * (j + 1)).take_while(|&v| v <= 500).collect();
    let g = PeriodicSet::finite(g_vals);
    let e = EpForm::new(2, vec![1], vec![], g.clone()).unwrap();
    let s = ResidueSet::from_members(2, [0]).unwrap();
    (e, g, s, win(-500, 500))
}

#[test]
fn criterion_06_restriction_pipeline() {
    let start = Instant::now();
    let (e, g, s, target) = pipeline_scenario();

    let d = greedy_min_complement(&g, target).unwrap();
    let out = inherit_complement(&e, &s, &SetValue::Windowed(d), target).unwrap();

    let w_value = SetValue::Periodic(e.to_set().unwrap());
    assert_eq!(first_uncovered(&out.complement, &w_value, target), None);
    assert_eq!(out.report.overall.status, Status::CertifiedYes, "note: {}", out.report.overall.note);
    assert!(!out.report.elements.is_empty());
    for el in &out.report.elements {
        assert!(
            matches!(el.finding, ElementFinding::Necessary { .. }),
            "element {} has no dependent witness",
            el.element
        );
    }

    // the base set's positive part climbs in steps of 1 or 2
    let pos = e.to_set().unwrap().members_between(0, 500);
    assert!(pos.windows(2).all(|p| p[1] - p[0] == 1 || p[1] - p[0] == 2));
    finish("criterion 6", start, "restricted greedy complement certified minimal against W".into());
}

#[test]
fn criterion_07_extraction_round_trip() {
    let start = Instant::now();
    let (e, g, s, target) = pipeline_scenario();
    let d = greedy_min_complement(&g, target).unwrap();
    let inherited = inherit_complement(&e, &s, &SetValue::Windowed(d), target).unwrap();

    let out = extract_complement(&e, &inherited.complement, target).unwrap();
    let g_value = SetValue::Periodic(g);
    assert_eq!(first_uncovered(&out.complement, &g_value, target), None);
    assert_eq!(out.report.overall.status, Status::CertifiedYes, "note: {}", out.report.overall.note);
    assert!(!out.report.elements.is_empty());
    for el in &out.report.elements {
        assert!(
            matches!(el.finding, ElementFinding::Necessary { .. }),
            "element {} has no dependent witness",
            el.element
        );
    }
    finish("criterion 7", start, "extracted complement of G covers and is certified on the window".into());
}

#[test]
fn criterion_08_search_containment() {
    let start = Instant::now();
    let mut valid = 0u64;
    for n in 1..=4i64 {
        let masks = 1u64 << n;
        for a_mask in 0..masks {
            for f_mask in 0..masks {
                for g_mask in 0..masks {
                    let a = ResidueSet::from_mask(n, a_mask).unwrap();
                    let f = ResidueSet::from_mask(n, f_mask).unwrap();
                    let g = ResidueSet::from_mask(n, g_mask).unwrap();
                    let grounded = f_mask & !a_mask == 0 && g_mask & a_mask == 0;
                    let classes = EpClasses::new(a, f, g).unwrap();
                    let sufficient = search_s_sufficient(&classes).unwrap();
                    let necessary = search_s_necessary(&classes).unwrap();
                    if g_mask == 0 {
                        assert!(sufficient.is_empty(), "n = {n}, A = {a_mask:b}: empty G admits a sufficient S");
                        assert!(necessary.is_empty(), "n = {n}, A = {a_mask:b}: empty G admits a necessary S");
                    }
                    if grounded {
                        valid += 1;
                        for s in &sufficient {
                            assert!(
                                necessary.contains(s),
                                "n = {n}, A = {a_mask:b}, F = {f_mask:b}, G = {g_mask:b}: sufficient S = {:?} not necessary",
                                s.members()
                            );
                        }
                    }
                }
            }
        }
    }
    finish("criterion 8", start, format!("{valid} grounded patterns with n <= 4: sufficient within necessary, empty G finds nothing"));
}

#[test]
fn criterion_09_naturals_never_minimal_against_deep_sets() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC09);
    let probe = win(-100, 100);
    let naturals = SetValue::Periodic(PeriodicSet::naturals());
    for round in 0..100 {
        let w = SetValue::Periodic(random_periodic(&mut rng, true));
        assert_eq!(
            first_uncovered(&naturals, &w, probe),
            None,
            "round {round}: deep set fails to complement N"
        );
        for n in 0..=50 {
            let deps = dependents(&naturals, &w, n, probe).unwrap();
            assert!(
                deps.is_empty(),
                "round {round}: {n} has dependent witnesses {deps:?} against {w:?}"
            );
        }
    }
    finish("criterion 9", start, "100 deep sets: no natural number is ever necessary".into());
}
