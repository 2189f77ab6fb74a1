//! Additive complement analysis: coverage verdicts, dependent elements,
//! minimality reports with witnesses, a greedy windowed complement builder,
//! and gap statistics.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{Window, WindowSet};
use crate::sets::{sumset_contains, PeriodicSet};
use crate::value::SetValue;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Status {
    #[serde(rename = "CERTIFIED_YES")]
    CertifiedYes,
    #[serde(rename = "CERTIFIED_NO")]
    CertifiedNo,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl Status {
    /// Process exit code convention: yes 0, no 1, unknown 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::CertifiedYes => 0,
            Status::CertifiedNo => 1,
            Status::Unknown => 2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Point(i64),
    Triple(i64, i64, i64),
}

/// Outcome of a check. UNKNOWN verdicts carry the window the evidence came
/// from; notes say which rule produced the answer.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub window: Option<Window>,
    pub note: String,
}

impl Verdict {
    pub fn yes(note: impl Into<String>) -> Self {
        Verdict {
            status: Status::CertifiedYes,
            witness: None,
            window: None,
            note: note.into(),
        }
    }

    pub fn no(witness: Witness, note: impl Into<String>) -> Self {
        Verdict {
            status: Status::CertifiedNo,
            witness: Some(witness),
            window: None,
            note: note.into(),
        }
    }

    pub fn unknown(window: Window, note: impl Into<String>) -> Self {
        Verdict {
            status: Status::Unknown,
            witness: None,
            window: Some(window),
            note: note.into(),
        }
    }
}

/// Exact verdict on C + W = Z for periodic operands. No window is involved.
pub fn is_complement(c: &PeriodicSet, w: &PeriodicSet) -> Result<Verdict> {
    let sum = c.sumset(w)?;
    if sum.is_full() {
        return Ok(Verdict::yes("exact periodic check: C + W = Z"));
    }
    // A miss must show up in the middle or within one period of it.
    let lo = sum.mid_lo() - sum.period();
    let hi = sum.mid_hi() + sum.period();
    let witness = (lo..hi)
        .find(|&z| !sum.member(z))
        .expect("non-full sumset misses a point near its middle");
    Ok(Verdict::no(
        Witness::Point(witness),
        "exact periodic check: uncovered integer",
    ))
}

fn represented(rest: &SetValue, w: &SetValue, z: i64) -> bool {
    match (rest, w) {
        (SetValue::Periodic(a), SetValue::Periodic(b)) => sumset_contains(a, b, z),
        (SetValue::Periodic(a), SetValue::Windowed(b)) => b
            .iter_members()
            .any(|y| a.member_wide(z as i128 - y as i128)),
        (SetValue::Windowed(a), _) => a
            .iter_members()
            .any(|x| w.member_checked(z as i128 - x as i128)),
    }
}

/// First integer in `win` with no representation x + y, x in c, y in w.
/// Exact for periodic operands; windowed operands contribute exactly their
/// members.
pub fn first_uncovered(c: &SetValue, w: &SetValue, win: Window) -> Option<i64> {
    win.iter().find(|&z| !represented(c, w, z))
}

/// Integers z in `win` dependent on `elem`: z lands in elem + W but in no
/// (C without elem) + W. The representation test is exact, not windowed.
pub fn dependents(c: &SetValue, w: &SetValue, elem: i64, win: Window) -> Result<Vec<i64>> {
    let rest = c.remove_element(elem)?;
    Ok(win
        .iter()
        .filter(|&z| w.member_checked(z as i128 - elem as i128) && !represented(&rest, w, z))
        .collect())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "status")]
pub enum ElementFinding {
    /// Removing the element breaks coverage at the witness.
    #[serde(rename = "NECESSARY")]
    Necessary { witness: i64 },
    /// No dependent integer found inside the probe window.
    #[serde(rename = "UNDETERMINED")]
    Undetermined,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ElementReport {
    pub element: i64,
    #[serde(flatten)]
    pub finding: ElementFinding,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MinimalityReport {
    pub elements: Vec<ElementReport>,
    pub overall: Verdict,
}

fn probe_elements(c: &SetValue, w: &SetValue, win: Window) -> Vec<i64> {
    let base = match c {
        // The middle plus one full period into each tail: one representative
        // stretch of every periodic class on both sides.
        SetValue::Periodic(p) => {
            p.members_between(p.mid_lo() - p.period(), p.mid_hi() + p.period() - 1)
        }
        SetValue::Windowed(ws) => ws.members(),
    };
    // Keep elements whose coverage reach elem + W meets the window at all;
    // nothing inside the window can witness the others.
    base.into_iter()
        .filter(|&elem| {
            let lo = win.lo().saturating_sub(elem);
            let hi = win.hi().saturating_sub(elem);
            !w.members_between(lo, hi).is_empty()
        })
        .collect()
}

fn unbounded_below(v: &SetValue) -> bool {
    matches!(v, SetValue::Periodic(p) if !p.bounded_below())
}

fn unbounded_above(v: &SetValue) -> bool {
    matches!(v, SetValue::Periodic(p) if !p.bounded_above())
}

fn fmt_elems(elems: &[i64]) -> String {
    let strs: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
    strs.join(", ")
}

/// Per-element minimality evidence for C as a complement of W, probed on
/// `win`. Elements with a dependent witness in the window are NECESSARY.
/// The overall verdict is CERTIFIED_YES only when every probed element is
/// necessary; CERTIFIED_NO needs an exact proof that some element's dependent
/// set is empty everywhere, never a window alone.
pub fn minimality_report(c: &SetValue, w: &SetValue, win: Window) -> Result<MinimalityReport> {
    if let Some(z) = first_uncovered(c, w, win) {
        return Ok(MinimalityReport {
            elements: Vec::new(),
            overall: Verdict {
                status: Status::Unknown,
                witness: Some(Witness::Point(z)),
                window: Some(win),
                note: format!("not an additive complement on the window: {z} is uncovered"),
            },
        });
    }

    let probes = probe_elements(c, w, win);
    if probes.is_empty() {
        return Ok(MinimalityReport {
            elements: Vec::new(),
            overall: Verdict::unknown(
                win,
                "no element of C reaches the window; nothing to certify there".to_string(),
            ),
        });
    }
    let run = |&elem: &i64| -> Result<ElementReport> {
        let deps = dependents(c, w, elem, win)?;
        Ok(ElementReport {
            element: elem,
            finding: match deps.first() {
                Some(&witness) => ElementFinding::Necessary { witness },
                None => ElementFinding::Undetermined,
            },
        })
    };
    #[cfg(feature = "parallel")]
    let elements: Vec<ElementReport> = probes.par_iter().map(run).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let elements: Vec<ElementReport> = probes.iter().map(run).collect::<Result<_>>()?;

    let undetermined: Vec<i64> = elements
        .iter()
        .filter(|e| matches!(e.finding, ElementFinding::Undetermined))
        .map(|e| e.element)
        .collect();

    let overall = if undetermined.is_empty() {
        Verdict {
            status: Status::CertifiedYes,
            witness: None,
            window: Some(win),
            note: match c {
                SetValue::Periodic(_) => {
                    "every element across the middle and one period of each tail has a dependent witness in the window".to_string()
                }
                SetValue::Windowed(_) => {
                    "every listed element has a dependent witness in the window".to_string()
                }
            },
        }
    } else if (unbounded_below(c) && unbounded_above(w))
        || (unbounded_above(c) && unbounded_below(w))
    {
        // Removing an element of C can be compensated arbitrarily far out
        // when C and W stretch in opposite directions, so a finite window
        // can never certify either way.
        Verdict::unknown(
            win,
            format!(
                "unbounded-opposite-directions obstruction: no dependent witnesses can settle minimality from a window alone; undetermined elements: [{}]",
                fmt_elems(&undetermined)
            ),
        )
    } else if let (SetValue::Periodic(cp), SetValue::Periodic(wp)) = (c, w) {
        match certify_redundancy(cp, wp, &undetermined) {
            Ok(Some(elem)) => Verdict::no(
                Witness::Point(elem),
                format!("element {elem} is redundant: its dependent set is empty (exact periodic check)"),
            ),
            Ok(None) => Verdict::unknown(
                win,
                format!(
                    "no dependent witnesses in the window for [{}], and none of them is provably redundant; widen the window",
                    fmt_elems(&undetermined)
                ),
            ),
            Err(_) => Verdict::unknown(
                win,
                format!(
                    "no dependent witnesses in the window for [{}]; exact redundancy check exceeded the period cap",
                    fmt_elems(&undetermined)
                ),
            ),
        }
    } else {
        Verdict::unknown(
            win,
            format!(
                "windowed evidence only; undetermined elements: [{}]",
                fmt_elems(&undetermined)
            ),
        )
    };

    Ok(MinimalityReport { elements, overall })
}

/// Look for an element whose entire dependent set is empty: everything it
/// covers is covered by the rest of C as well, globally and exactly.
fn certify_redundancy(c: &PeriodicSet, w: &PeriodicSet, candidates: &[i64]) -> Result<Option<i64>> {
    for &elem in candidates {
        let rest = c.difference(&PeriodicSet::finite([elem]))?;
        let covered_by_rest = rest.sumset(w)?;
        let own = w.translate(elem);
        if own.difference(&covered_by_rest)?.is_empty() {
            return Ok(Some(elem));
        }
    }
    Ok(None)
}

/// Greedy windowed minimal complement of a bounded-below set G: scan the
/// target descending, adding z - min(G) whenever z is uncovered, then prune
/// ascending while preserving single-cover witnesses.
pub fn greedy_min_complement(g: &PeriodicSet, target: Window) -> Result<WindowSet> {
    if g.is_empty() {
        return Err(Error::EmptySet);
    }
    let g0 = g.min_element()?;
    let d_lo = target
        .lo()
        .checked_sub(g0)
        .ok_or(Error::Overflow("sizing the complement window"))?;
    let d_hi = target
        .hi()
        .checked_sub(g0)
        .ok_or(Error::Overflow("sizing the complement window"))?;
    let d_window = Window::new(d_lo, d_hi)?;

    let span = target.span() as usize;
    let mut counts = vec![0u32; span];
    let idx = |z: i64| (z - target.lo()) as usize;

    // members of G that can land a given d inside the target
    let g_hits = |d: i64| -> Vec<i64> {
        g.members_between(target.lo() - d, target.hi() - d)
            .into_iter()
            .map(|y| d + y)
            .collect()
    };

    let mut chosen: Vec<i64> = Vec::new();
    for z in (target.lo()..=target.hi()).rev() {
        if counts[idx(z)] == 0 {
            let d = z - g0;
            for hit in g_hits(d) {
                counts[idx(hit)] += 1;
            }
            chosen.push(d);
        }
    }

    chosen.sort_unstable();
    let mut kept: Vec<i64> = Vec::new();
    for &d in &chosen {
        let hits = g_hits(d);
        if hits.iter().all(|&h| counts[idx(h)] >= 2) {
            for &h in &hits {
                counts[idx(h)] -= 1;
            }
        } else {
            kept.push(d);
        }
    }

    debug_assert!(counts.iter().all(|&c| c >= 1), "greedy left a gap");
    WindowSet::from_members(d_window, kept)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GapStats {
    pub max_gap: i64,
    pub gap_histogram: BTreeMap<i64, u64>,
    pub complement_gap_histogram: BTreeMap<i64, u64>,
}

fn gaps_of(members: &[i64]) -> BTreeMap<i64, u64> {
    let mut hist = BTreeMap::new();
    for pair in members.windows(2) {
        *hist.entry(pair[1] - pair[0]).or_insert(0) += 1;
    }
    hist
}

/// Consecutive-difference statistics of W inside a window, together with the
/// same statistics for the complement of W there.
pub fn gap_stats(set: &SetValue, win: Window) -> Result<GapStats> {
    let members = set.members_between(win.lo(), win.hi());
    if members.is_empty() {
        return Err(Error::EmptyWindowIntersection);
    }
    let absent: Vec<i64> = win.iter().filter(|&z| !set.member(z)).collect();
    let gap_histogram = gaps_of(&members);
    let max_gap = gap_histogram.keys().max().copied().unwrap_or(0);
    Ok(GapStats {
        max_gap,
        gap_histogram,
        complement_gap_histogram: gaps_of(&absent),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn evens() -> PeriodicSet {
        PeriodicSet::residue_classes(2, &[0]).unwrap()
    }

    #[test]
    fn is_complement_yes_and_no() {
        let c = PeriodicSet::finite([0, 1]);
        let v = is_complement(&c, &evens()).unwrap();
        assert_eq!(v.status, Status::CertifiedYes);

        let v = is_complement(&PeriodicSet::finite([0]), &evens()).unwrap();
        assert_eq!(v.status, Status::CertifiedNo);
        match v.witness {
            Some(Witness::Point(z)) => assert!(z.rem_euclid(2) == 1),
            other => panic!("expected point witness, got {other:?}"),
        }

        let naturals = PeriodicSet::naturals();
        let v = is_complement(&naturals, &naturals.negate()).unwrap();
        assert_eq!(v.status, Status::CertifiedYes);
    }

    #[test]
    fn dependents_of_block_on_evens() {
        let c = SetValue::Periodic(PeriodicSet::finite([0, 1]));
        let ws = SetValue::Periodic(evens());
        let deps = dependents(&c, &ws, 0, w(-6, 6)).unwrap();
        assert_eq!(deps, vec![-6, -4, -2, 0, 2, 4, 6]);
        let deps = dependents(&c, &ws, 1, w(-6, 6)).unwrap();
        assert_eq!(deps, vec![-5, -3, -1, 1, 3, 5]);
    }

    #[test]
    fn dependents_requires_membership() {
        let c = SetValue::Periodic(PeriodicSet::finite([0, 1]));
        let ws = SetValue::Periodic(evens());
        assert!(matches!(
            dependents(&c, &ws, 7, w(0, 10)),
            Err(Error::NotAnElement(7))
        ));
    }

    #[test]
    fn naturals_never_depend_on_one_element() {
        // W unbounded below makes every removal from N compensable.
        let c = SetValue::Periodic(PeriodicSet::naturals());
        let ws = SetValue::Periodic(PeriodicSet::naturals().negate());
        for elem in [0, 3, 17] {
            assert!(dependents(&c, &ws, elem, w(-50, 50)).unwrap().is_empty());
        }
    }

    #[test]
    fn minimality_yes_for_block_against_evens() {
        let c = SetValue::Periodic(PeriodicSet::finite([0, 1]));
        let ws = SetValue::Periodic(evens());
        let report = minimality_report(&c, &ws, w(-10, 10)).unwrap();
        assert_eq!(report.overall.status, Status::CertifiedYes);
        assert_eq!(report.elements.len(), 2);
        for e in &report.elements {
            assert!(matches!(e.finding, ElementFinding::Necessary { .. }));
        }
    }

    #[test]
    fn minimality_no_for_redundant_element() {
        let c = SetValue::Periodic(PeriodicSet::finite([0, 1, 2]));
        let ws = SetValue::Periodic(evens());
        let report = minimality_report(&c, &ws, w(-10, 10)).unwrap();
        assert_eq!(report.overall.status, Status::CertifiedNo);
        assert_eq!(report.overall.witness, Some(Witness::Point(0)));
    }

    #[test]
    fn minimality_unknown_under_obstruction() {
        let c = SetValue::Periodic(PeriodicSet::naturals());
        let ws = SetValue::Periodic(PeriodicSet::naturals().negate());
        let report = minimality_report(&c, &ws, w(-40, 40)).unwrap();
        assert_eq!(report.overall.status, Status::Unknown);
        assert!(report.overall.note.contains("obstruction"));
        for e in &report.elements {
            assert!(matches!(e.finding, ElementFinding::Undetermined));
        }
    }

    #[test]
    fn minimality_detects_non_coverage() {
        let c = SetValue::Periodic(PeriodicSet::finite([0]));
        let ws = SetValue::Periodic(evens());
        let report = minimality_report(&c, &ws, w(-10, 10)).unwrap();
        assert_eq!(report.overall.status, Status::Unknown);
        assert!(report.overall.note.contains("uncovered"));
        assert!(report.elements.is_empty());
    }

    #[test]
    fn minimality_with_opposite_tails_can_still_be_yes() {
        // C stretches up, W stretches down, and yet every element of C is
        // necessary: evens above 0 come only from the +1 shift.
        let odds_up = PeriodicSet::residue_classes_from(2, &[1]).unwrap();
        let c = SetValue::Periodic(odds_up.union(&PeriodicSet::finite([0])).unwrap());
        let neg_evens = PeriodicSet::residue_classes_from(2, &[0])
            .unwrap()
            .negate();
        let ws = SetValue::Periodic(neg_evens.union(&PeriodicSet::finite([1])).unwrap());
        let report = minimality_report(&c, &ws, w(-30, 30)).unwrap();
        assert_eq!(report.overall.status, Status::CertifiedYes);
    }

    #[test]
    fn greedy_covers_and_is_windowed_minimal() {
        let g = PeriodicSet::finite([0, 1, 3]);
        let target = w(-30, 30);
        let d = greedy_min_complement(&g, target).unwrap();
        // coverage
        for z in target.iter() {
            assert!(
                d.iter_members().any(|x| g.member(z - x)),
                "uncovered {z}"
            );
        }
        // windowed minimality: every kept d has a point only it covers
        for x in d.members() {
            let mut rest = d.clone();
            rest.remove(x);
            let alone = target.iter().any(|z| {
                g.member(z - x) && !rest.iter_members().any(|x2| g.member(z - x2))
            });
            assert!(alone, "element {x} is prunable");
        }
    }

    #[test]
    fn greedy_rejects_bad_g() {
        assert!(matches!(
            greedy_min_complement(&PeriodicSet::empty(), w(0, 10)),
            Err(Error::EmptySet)
        ));
        assert!(matches!(
            greedy_min_complement(&PeriodicSet::integers(), w(0, 10)),
            Err(Error::UnboundedBelow)
        ));
    }

    #[test]
    fn gap_stats_counts_runs() {
        let v = SetValue::Periodic(PeriodicSet::residue_classes(3, &[0]).unwrap());
        let stats = gap_stats(&v, w(0, 9)).unwrap();
        assert_eq!(stats.max_gap, 3);
        assert_eq!(stats.gap_histogram.get(&3), Some(&3));
        // complement inside [0,9] is 1,2,4,5,7,8: gaps 1,2,1,2,1
        assert_eq!(stats.complement_gap_histogram.get(&1), Some(&3));
        assert_eq!(stats.complement_gap_histogram.get(&2), Some(&2));
    }

    #[test]
    fn gap_stats_needs_members() {
        let v = SetValue::Periodic(PeriodicSet::empty());
        assert!(matches!(
            gap_stats(&v, w(0, 5)),
            Err(Error::EmptyWindowIntersection)
        ));
    }
}
