//! Doubly eventually periodic integer sets in a canonical three-zone form:
//! a periodic pattern below `mid_lo`, an explicit middle on
//! `[mid_lo, mid_hi)`, and a periodic pattern from `mid_hi` upward.
//!
//! Every constructor and operation canonicalizes, so structural equality
//! decides set equality.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{EpFormError, Error, Result};
use crate::modular::{EpClasses, ResidueSet};

/// Boolean set operations and sumsets refuse combined periods beyond this.
pub const DEFAULT_PERIOD_CAP: i64 = 10080;

fn lcm_capped(a: i64, b: i64, cap: i64) -> Result<i64> {
    let g = a.gcd(&b);
    let m = (a / g) as i128 * b as i128;
    if m > cap as i128 {
        return Err(Error::PeriodCapExceeded {
            lcm: m.min(i64::MAX as i128) as i64,
            cap,
        });
    }
    Ok(m as i64)
}

/// Does `[lo, hi]` contain an integer congruent to `c` mod `m`?
fn interval_contains_class(lo: i128, hi: i128, c: i128, m: i128) -> bool {
    if lo > hi {
        return false;
    }
    let first = lo + (c - lo).rem_euclid(m);
    first <= hi
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PeriodicSet {
    period: i64,
    low: ResidueSet,
    high: ResidueSet,
    mid_lo: i64,
    mid_hi: i64,
    mid: Vec<i64>,
}

impl Serialize for PeriodicSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PeriodicSet", 6)?;
        st.serialize_field("period", &self.period)?;
        st.serialize_field("low_res", &self.low.members())?;
        st.serialize_field("high_res", &self.high.members())?;
        st.serialize_field("mid_lo", &self.mid_lo)?;
        st.serialize_field("mid_hi", &self.mid_hi)?;
        st.serialize_field("mid", &self.mid)?;
        st.end()
    }
}

/// Canonicalize: reduce to the minimal period, absorb middle entries that
/// already follow the adjacent pattern, and normalize thresholds when the
/// middle empties out.
fn canonical(
    period: i64,
    low: ResidueSet,
    high: ResidueSet,
    mid_lo: i64,
    mid_hi: i64,
    mid: BTreeSet<i64>,
) -> PeriodicSet {
    debug_assert!(period >= 1);
    debug_assert!(mid_lo <= mid_hi);

    let mut d = period;
    for cand in 1..=period {
        if period % cand == 0 && low.rotation_invariant(cand) && high.rotation_invariant(cand) {
            d = cand;
            break;
        }
    }
    let low = low.project(d).expect("divisor of period");
    let high = high.project(d).expect("divisor of period");

    let mut mid = mid;
    let mut mid_lo = mid_lo;
    let mut mid_hi = mid_hi;

    while mid_lo < mid_hi {
        let present = mid.contains(&mid_lo);
        if present != low.contains(mid_lo) {
            break;
        }
        mid.remove(&mid_lo);
        mid_lo += 1;
    }
    while mid_lo < mid_hi {
        let last = mid_hi - 1;
        let present = mid.contains(&last);
        if present != high.contains(last) {
            break;
        }
        mid.remove(&last);
        mid_hi -= 1;
    }

    if mid_lo == mid_hi {
        if low == high {
            mid_lo = 0;
            mid_hi = 0;
        } else {
            // Slide the threshold down to just above the last point where
            // the two patterns disagree.
            while low.contains(mid_lo - 1) == high.contains(mid_lo - 1) {
                mid_lo -= 1;
            }
            mid_hi = mid_lo;
        }
    }

    PeriodicSet {
        period: d,
        low,
        high,
        mid_lo,
        mid_hi,
        mid: mid.into_iter().collect(),
    }
}

/// Exact membership decision for a sumset without materializing it.
/// All arithmetic runs in i128, so any i64 point can be queried.
struct SumCtx<'a> {
    s: &'a PeriodicSet,
    t: &'a PeriodicSet,
    ns: i128,
    nt: i128,
    g: i128,
    m: i128,
    /// Bezout coefficient: inv * (ns / g) == 1 (mod nt / g).
    inv: i128,
}

impl<'a> SumCtx<'a> {
    fn new(s: &'a PeriodicSet, t: &'a PeriodicSet) -> Self {
        let ns = s.period as i128;
        let nt = t.period as i128;
        let ext = ns.extended_gcd(&nt);
        let g = ext.gcd;
        SumCtx {
            s,
            t,
            ns,
            nt,
            g,
            m: ns / g * nt,
            inv: ext.x.rem_euclid(nt / g),
        }
    }

    /// Is x == r1 (mod ns) and x == b (mod nt) solvable?
    fn solvable(&self, r1: i64, b: i128) -> bool {
        (b - r1 as i128).rem_euclid(self.g) == 0
    }

    /// The class mod m solving x == r1 (mod ns), x == b (mod nt), if any.
    fn crt(&self, r1: i64, b: i128) -> Option<i128> {
        let r1 = r1 as i128;
        let d = (b - r1).rem_euclid(self.nt);
        if d % self.g != 0 {
            return None;
        }
        let step = self.nt / self.g;
        let k = (d / self.g % step * (self.inv % step)).rem_euclid(step);
        Some((r1 + self.ns * k).rem_euclid(self.m))
    }

    fn member(&self, z: i64) -> bool {
        let (s, t) = (self.s, self.t);
        let z = z as i128;

        for &x in &s.mid {
            if t.member_wide(z - x as i128) {
                return true;
            }
        }

        if !s.low.is_empty() {
            // x below s.mid_lo paired with an explicit y in t's middle
            for &y in &t.mid {
                let x = z - y as i128;
                if x < s.mid_lo as i128 && s.low.contains_wide(x) {
                    return true;
                }
            }
            for r1 in s.low.iter() {
                for r2 in t.low.iter() {
                    // x in [z - t.mid_lo + 1, s.mid_lo - 1]
                    if let Some(c) = self.crt(r1, z - r2 as i128) {
                        let lo = z - t.mid_lo as i128 + 1;
                        let hi = s.mid_lo as i128 - 1;
                        if interval_contains_class(lo, hi, c, self.m) {
                            return true;
                        }
                    }
                }
                for r2 in t.high.iter() {
                    // x ranges over a half line downward; solvability is enough
                    if self.solvable(r1, z - r2 as i128) {
                        return true;
                    }
                }
            }
        }

        if !s.high.is_empty() {
            for &y in &t.mid {
                let x = z - y as i128;
                if x >= s.mid_hi as i128 && s.high.contains_wide(x) {
                    return true;
                }
            }
            for r1 in s.high.iter() {
                for r2 in t.low.iter() {
                    // x ranges over a half line upward
                    if self.solvable(r1, z - r2 as i128) {
                        return true;
                    }
                }
                for r2 in t.high.iter() {
                    // x in [s.mid_hi, z - t.mid_hi]
                    if let Some(c) = self.crt(r1, z - r2 as i128) {
                        let lo = s.mid_hi as i128;
                        let hi = z - t.mid_hi as i128;
                        if interval_contains_class(lo, hi, c, self.m) {
                            return true;
                        }
                    }
                }
            }
        }

        false
    }
}

/// Exact membership of `z` in `s + t`. Never materializes the sumset, so no
/// period cap applies.
pub fn sumset_contains(s: &PeriodicSet, t: &PeriodicSet, z: i64) -> bool {
    SumCtx::new(s, t).member(z)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoolOp {
    Union,
    Intersect,
    Difference,
}

pub fn boolean_combine(op: BoolOp, s: &PeriodicSet, t: &PeriodicSet) -> Result<PeriodicSet> {
    match op {
        BoolOp::Union => s.union(t),
        BoolOp::Intersect => s.intersect(t),
        BoolOp::Difference => s.difference(t),
    }
}

impl PeriodicSet {
    pub fn from_parts(
        period: i64,
        low_res: &[i64],
        high_res: &[i64],
        mid_lo: i64,
        mid_hi: i64,
        mid: &[i64],
    ) -> Result<Self> {
        if period < 1 {
            return Err(Error::NonPositiveModulus(period));
        }
        if mid_lo > mid_hi {
            return Err(Error::InvalidWindow {
                lo: mid_lo,
                hi: mid_hi,
            });
        }
        let low = ResidueSet::from_members(period, low_res.iter().copied())?;
        let high = ResidueSet::from_members(period, high_res.iter().copied())?;
        let mut mid_set = BTreeSet::new();
        for &z in mid {
            if z < mid_lo || z >= mid_hi {
                return Err(Error::Precondition(format!(
                    "mid element {z} outside [mid_lo, mid_hi) = [{mid_lo}, {mid_hi})"
                )));
            }
            mid_set.insert(z);
        }
        Ok(canonical(period, low, high, mid_lo, mid_hi, mid_set))
    }

    pub fn empty() -> Self {
        PeriodicSet {
            period: 1,
            low: ResidueSet::empty(1).unwrap(),
            high: ResidueSet::empty(1).unwrap(),
            mid_lo: 0,
            mid_hi: 0,
            mid: Vec::new(),
        }
    }

    pub fn integers() -> Self {
        PeriodicSet {
            period: 1,
            low: ResidueSet::full(1).unwrap(),
            high: ResidueSet::full(1).unwrap(),
            mid_lo: 0,
            mid_hi: 0,
            mid: Vec::new(),
        }
    }

    pub fn naturals() -> Self {
        PeriodicSet {
            period: 1,
            low: ResidueSet::empty(1).unwrap(),
            high: ResidueSet::full(1).unwrap(),
            mid_lo: 0,
            mid_hi: 0,
            mid: Vec::new(),
        }
    }

    pub fn finite(values: impl IntoIterator<Item = i64>) -> Self {
        let mid: BTreeSet<i64> = values.into_iter().collect();
        match (mid.first().copied(), mid.last().copied()) {
            (Some(lo), Some(hi)) => canonical(
                1,
                ResidueSet::empty(1).unwrap(),
                ResidueSet::empty(1).unwrap(),
                lo,
                hi + 1,
                mid,
            ),
            _ => Self::empty(),
        }
    }

    /// Full residue classes: n*Z + {r : r in residues}.
    pub fn residue_classes(period: i64, residues: &[i64]) -> Result<Self> {
        if period < 1 {
            return Err(Error::NonPositiveModulus(period));
        }
        let pat = ResidueSet::from_values_mod(period, residues.iter().copied())?;
        Ok(canonical(
            period,
            pat.clone(),
            pat,
            0,
            0,
            BTreeSet::new(),
        ))
    }

    /// Upward progressions: union over starts s of {s + k*period : k >= 0}.
    pub fn residue_classes_from(period: i64, starts: &[i64]) -> Result<Self> {
        if period < 1 {
            return Err(Error::NonPositiveModulus(period));
        }
        if starts.is_empty() {
            return Ok(Self::empty());
        }
        let high = ResidueSet::from_values_mod(period, starts.iter().copied())?;
        let lo = *starts.iter().min().unwrap();
        let hi = *starts.iter().max().unwrap() + 1;
        let mut mid = BTreeSet::new();
        for z in lo..hi {
            if starts.iter().any(|&s| s <= z && (z - s) % period == 0) {
                mid.insert(z);
            }
        }
        Ok(canonical(
            period,
            ResidueSet::empty(period)?,
            high,
            lo,
            hi,
            mid,
        ))
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn low_res(&self) -> &ResidueSet {
        &self.low
    }

    pub fn high_res(&self) -> &ResidueSet {
        &self.high
    }

    pub fn mid_lo(&self) -> i64 {
        self.mid_lo
    }

    pub fn mid_hi(&self) -> i64 {
        self.mid_hi
    }

    pub fn mid(&self) -> &[i64] {
        &self.mid
    }

    pub fn member(&self, z: i64) -> bool {
        if z < self.mid_lo {
            self.low.contains(z)
        } else if z >= self.mid_hi {
            self.high.contains(z)
        } else {
            self.mid.binary_search(&z).is_ok()
        }
    }

    pub(crate) fn member_wide(&self, z: i128) -> bool {
        if z < self.mid_lo as i128 {
            self.low.contains_wide(z)
        } else if z >= self.mid_hi as i128 {
            self.high.contains_wide(z)
        } else {
            self.mid.binary_search(&(z as i64)).is_ok()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.low.is_empty() && self.high.is_empty() && self.mid.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self == &Self::integers()
    }

    pub fn bounded_below(&self) -> bool {
        self.low.is_empty()
    }

    pub fn bounded_above(&self) -> bool {
        self.high.is_empty()
    }

    /// Least element; errors when empty or unbounded below.
    pub fn min_element(&self) -> Result<i64> {
        if !self.bounded_below() {
            return Err(Error::UnboundedBelow);
        }
        if let Some(&z) = self.mid.first() {
            return Ok(z);
        }
        if !self.high.is_empty() {
            for z in self.mid_hi..self.mid_hi + self.period {
                if self.high.contains(z) {
                    return Ok(z);
                }
            }
        }
        Err(Error::EmptySet)
    }

    pub fn translate(&self, offset: i64) -> Self {
        let mid: BTreeSet<i64> = self
            .mid
            .iter()
            .map(|&z| z.checked_add(offset).expect("translate overflow"))
            .collect();
        canonical(
            self.period,
            self.low.rotate(offset),
            self.high.rotate(offset),
            self.mid_lo.checked_add(offset).expect("translate overflow"),
            self.mid_hi.checked_add(offset).expect("translate overflow"),
            mid,
        )
    }

    pub fn negate(&self) -> Self {
        let mid: BTreeSet<i64> = self.mid.iter().map(|&z| -z).collect();
        canonical(
            self.period,
            self.high.reflect(),
            self.low.reflect(),
            1 - self.mid_hi,
            1 - self.mid_lo,
            mid,
        )
    }

    fn combine(&self, other: &Self, op: BoolOp) -> Result<Self> {
        let m = lcm_capped(self.period, other.period, DEFAULT_PERIOD_CAP)?;
        let apply = |a: bool, b: bool| match op {
            BoolOp::Union => a || b,
            BoolOp::Intersect => a && b,
            BoolOp::Difference => a && !b,
        };
        let mut low = ResidueSet::empty(m)?;
        let mut high = ResidueSet::empty(m)?;
        for r in 0..m {
            if apply(self.low.contains(r), other.low.contains(r)) {
                low.insert(r);
            }
            if apply(self.high.contains(r), other.high.contains(r)) {
                high.insert(r);
            }
        }
        let lo = self.mid_lo.min(other.mid_lo);
        let hi = self.mid_hi.max(other.mid_hi);
        let mut mid = BTreeSet::new();
        for z in lo..hi {
            if apply(self.member(z), other.member(z)) {
                mid.insert(z);
            }
        }
        Ok(canonical(m, low, high, lo, hi, mid))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, BoolOp::Union)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.combine(other, BoolOp::Intersect)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, BoolOp::Difference)
    }

    /// Exact sumset {x + y}. The result's combined period is capped.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty());
        }
        let m = lcm_capped(self.period, other.period, DEFAULT_PERIOD_CAP)?;
        let ctx = SumCtx::new(self, other);

        let hi = self
            .mid_hi
            .checked_add(other.mid_hi)
            .and_then(|v| v.checked_add(2 * m))
            .ok_or(Error::Overflow("computing sumset bounds"))?;
        let lo = self
            .mid_lo
            .checked_add(other.mid_lo)
            .and_then(|v| v.checked_sub(2 * m))
            .ok_or(Error::Overflow("computing sumset bounds"))?;

        let mut low = ResidueSet::empty(m)?;
        for z in lo - m..lo {
            if ctx.member(z) {
                low.insert(z);
            }
        }
        let mut high = ResidueSet::empty(m)?;
        for z in hi..hi + m {
            if ctx.member(z) {
                high.insert(z);
            }
        }
        let mut mid = BTreeSet::new();
        for z in lo..hi {
            if ctx.member(z) {
                mid.insert(z);
            }
        }
        Ok(canonical(m, low, high, lo, hi, mid))
    }

    /// Intersection with the residue classes in `keep` (any modulus).
    pub fn restrict_to_residues(&self, keep: &ResidueSet) -> Result<Self> {
        let n = keep.modulus();
        let m = lcm_capped(self.period, n, DEFAULT_PERIOD_CAP)?;
        let mut low = ResidueSet::empty(m)?;
        let mut high = ResidueSet::empty(m)?;
        for r in 0..m {
            if keep.contains(r) {
                if self.low.contains(r) {
                    low.insert(r);
                }
                if self.high.contains(r) {
                    high.insert(r);
                }
            }
        }
        let mid: BTreeSet<i64> = self
            .mid
            .iter()
            .copied()
            .filter(|&z| keep.contains(z))
            .collect();
        Ok(canonical(m, low, high, self.mid_lo, self.mid_hi, mid))
    }

    /// Residues mod n realized by the set's members.
    pub fn residues_mod(&self, n: i64) -> Result<ResidueSet> {
        if n < 1 {
            return Err(Error::NonPositiveModulus(n));
        }
        let mut out = ResidueSet::empty(n)?;
        for &z in &self.mid {
            out.insert(z);
        }
        let g = self.period.gcd(&n);
        for r in self.low.iter().chain(self.high.iter()) {
            // a half-line of the class r mod period meets exactly the
            // residues congruent to r modulo gcd(period, n)
            let mut u = r.rem_euclid(g);
            while u < n {
                out.insert(u);
                u += g;
            }
        }
        Ok(out)
    }

    /// Classes mod n that contain infinitely many negative members.
    pub fn classes_unbounded_below(&self, n: i64) -> Result<ResidueSet> {
        if n < 1 {
            return Err(Error::NonPositiveModulus(n));
        }
        let mut out = ResidueSet::empty(n)?;
        let g = self.period.gcd(&n);
        for r in self.low.iter() {
            let mut u = r.rem_euclid(g);
            while u < n {
                out.insert(u);
                u += g;
            }
        }
        Ok(out)
    }

    /// Members within [lo, hi], ascending.
    pub fn members_between(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&z| self.member(z)).collect()
    }
}

/// Eventually periodic normal form W = (nN + A) | F | G with
/// F below A inside A's classes and G in classes disjoint from A's.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EpForm {
    period: i64,
    a: Vec<i64>,
    f: Vec<i64>,
    g: PeriodicSet,
}

impl EpForm {
    pub fn new(period: i64, a: Vec<i64>, f: Vec<i64>, g: PeriodicSet) -> Result<Self> {
        if period < 1 {
            return Err(EpFormError::NonPositivePeriod(period).into());
        }
        let mut a = a;
        a.sort_unstable();
        a.dedup();
        if a.is_empty() {
            return Err(EpFormError::EmptyA.into());
        }
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i].rem_euclid(period) == a[j].rem_euclid(period) {
                    return Err(EpFormError::DuplicateClassInA {
                        first: a[i],
                        second: a[j],
                        residue: a[i].rem_euclid(period),
                        modulus: period,
                    }
                    .into());
                }
            }
        }
        let mut f = f;
        f.sort_unstable();
        f.dedup();
        for &fv in &f {
            match a.iter().find(|&&av| av.rem_euclid(period) == fv.rem_euclid(period)) {
                None => return Err(EpFormError::FOutsideAClasses { f: fv }.into()),
                Some(&av) => {
                    if fv >= av {
                        return Err(EpFormError::FNotBelowA { f: fv, a: av }.into());
                    }
                }
            }
        }
        if !g.bounded_below() {
            return Err(EpFormError::GUnboundedBelow.into());
        }
        let g_classes = g.residues_mod(period)?;
        for &av in &a {
            let r = av.rem_euclid(period);
            if g_classes.contains(r) {
                return Err(EpFormError::GMeetsAClasses {
                    residue: r,
                    modulus: period,
                }
                .into());
            }
        }
        Ok(EpForm { period, a, f, g })
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn f(&self) -> &[i64] {
        &self.f
    }

    pub fn g(&self) -> &PeriodicSet {
        &self.g
    }

    /// The set this form denotes.
    pub fn to_set(&self) -> Result<PeriodicSet> {
        let base = PeriodicSet::residue_classes_from(self.period, &self.a)?;
        let with_f = base.union(&PeriodicSet::finite(self.f.iter().copied()))?;
        with_f.union(&self.g)
    }

    /// Residue classes of the three parts, for the modular condition checks.
    pub fn classes(&self) -> Result<EpClasses> {
        let a = ResidueSet::from_values_mod(self.period, self.a.iter().copied())?;
        let f = ResidueSet::from_values_mod(self.period, self.f.iter().copied())?;
        let g = self.g.residues_mod(self.period)?;
        EpClasses::new(a, f, g)
    }

    pub fn translate(&self, offset: i64) -> Result<Self> {
        Self::new(
            self.period,
            self.a.iter().map(|&v| v + offset).collect(),
            self.f.iter().map(|&v| v + offset).collect(),
            self.g.translate(offset),
        )
    }
}

pub fn from_ep_form(e: &EpForm) -> Result<PeriodicSet> {
    e.to_set()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(
        period: i64,
        low: &[i64],
        high: &[i64],
        mid_lo: i64,
        mid_hi: i64,
        mid: &[i64],
    ) -> PeriodicSet {
        PeriodicSet::from_parts(period, low, high, mid_lo, mid_hi, mid).unwrap()
    }

    #[test]
    fn canonical_simple_sets() {
        assert_eq!(PeriodicSet::naturals(), ps(1, &[], &[0], 0, 0, &[]));
        assert_eq!(PeriodicSet::integers(), ps(1, &[0], &[0], 0, 0, &[]));
        assert_eq!(PeriodicSet::empty(), PeriodicSet::finite([]));
        assert!(PeriodicSet::integers().is_full());
        assert!(PeriodicSet::empty().is_empty());
    }

    #[test]
    fn canonical_reduces_period() {
        // Both patterns full mod 4 is just Z.
        let s = ps(4, &[0, 1, 2, 3], &[0, 1, 2, 3], 0, 0, &[]);
        assert_eq!(s, PeriodicSet::integers());
        assert_eq!(s.period(), 1);
    }

    #[test]
    fn canonical_absorbs_middle() {
        // Middle entries that follow the patterns get folded away.
        let s = ps(2, &[0], &[0], -4, 5, &[-4, -2, 0, 2, 4]);
        assert_eq!(s, PeriodicSet::residue_classes(2, &[0]).unwrap());
        assert_eq!(s.mid(), &[] as &[i64]);
    }

    #[test]
    fn canonical_threshold_for_pure_patterns() {
        let evens_up = PeriodicSet::residue_classes_from(2, &[0]).unwrap();
        // Pattern disagreement happens at -2, so the threshold sits at -1.
        assert_eq!(evens_up.mid_lo(), -1);
        assert_eq!(evens_up.mid_hi(), -1);
        assert!(evens_up.member(0));
        assert!(!evens_up.member(-2));
        assert!(evens_up.member(10));
    }

    #[test]
    fn member_examples() {
        let odd_up = PeriodicSet::residue_classes_from(2, &[1]).unwrap();
        assert!(!odd_up.member(-3));
        assert!(odd_up.member(1));
        assert!(odd_up.member(7));
        assert!(!odd_up.member(4));
    }

    #[test]
    fn union_difference_intersect() {
        let z = PeriodicSet::integers();
        let threes = PeriodicSet::residue_classes(3, &[0]).unwrap();
        let rest = z.difference(&threes).unwrap();
        assert_eq!(rest, PeriodicSet::residue_classes(3, &[1, 2]).unwrap());

        let n = PeriodicSet::naturals();
        let neg_n = n.negate();
        assert_eq!(n.intersect(&neg_n).unwrap(), PeriodicSet::finite([0]));

        let evens = PeriodicSet::residue_classes(2, &[0]).unwrap();
        let odds = PeriodicSet::residue_classes(2, &[1]).unwrap();
        assert_eq!(evens.union(&odds).unwrap(), z);
    }

    #[test]
    fn translate_and_negate() {
        let evens_up = PeriodicSet::residue_classes_from(2, &[0]).unwrap();
        let shifted = evens_up.translate(1);
        assert!(shifted.member(1));
        assert!(shifted.member(3));
        assert!(!shifted.member(0));

        let odds = PeriodicSet::residue_classes(3, &[1]).unwrap();
        assert_eq!(odds.negate(), PeriodicSet::residue_classes(3, &[2]).unwrap());

        let s = ps(3, &[0], &[1], -2, 3, &[-2, 0, 2]);
        let roundtrip = s.negate().negate();
        assert_eq!(s, roundtrip);
    }

    #[test]
    fn sumset_finite() {
        let a = PeriodicSet::finite([0, 2, 5]);
        let b = PeriodicSet::finite([1, 2, 3, 4]);
        let sum = a.sumset(&b).unwrap();
        assert_eq!(sum, PeriodicSet::finite(1..=9));
    }

    #[test]
    fn sumset_periodic() {
        let evens_up = PeriodicSet::residue_classes_from(2, &[0]).unwrap();
        let block = PeriodicSet::finite([0, 1]);
        assert_eq!(evens_up.sumset(&block).unwrap(), PeriodicSet::naturals());

        let n = PeriodicSet::naturals();
        let neg = n.negate();
        assert_eq!(n.sumset(&neg).unwrap(), PeriodicSet::integers());
    }

    #[test]
    fn sumset_contains_matches_sumset() {
        let s = ps(3, &[0], &[1, 2], -4, 4, &[-4, -1, 2]);
        let t = ps(2, &[1], &[0], -2, 3, &[0, 1]);
        let sum = s.sumset(&t).unwrap();
        for z in -60..60 {
            assert_eq!(sum.member(z), sumset_contains(&s, &t, z), "z = {z}");
        }
    }

    #[test]
    fn sumset_period_cap() {
        let a = PeriodicSet::residue_classes(5040, &[0]).unwrap();
        let b = PeriodicSet::residue_classes(4620, &[1]).unwrap();
        assert!(matches!(
            a.sumset(&b),
            Err(Error::PeriodCapExceeded { .. })
        ));
    }

    #[test]
    fn restrict_and_residues() {
        let s = PeriodicSet::finite(-5..=5);
        let keep = ResidueSet::from_members(3, [1]).unwrap();
        let restricted = s.restrict_to_residues(&keep).unwrap();
        assert_eq!(restricted, PeriodicSet::finite([-5, -2, 1, 4]));

        let evens_up = PeriodicSet::residue_classes_from(2, &[0]).unwrap();
        let mods = evens_up.residues_mod(4).unwrap();
        assert_eq!(mods.members(), vec![0, 2]);

        let odds = PeriodicSet::residue_classes(6, &[1]).unwrap();
        // gcd(6, 4) = 2, so the class 1 mod 6 hits 1 and 3 mod 4.
        assert_eq!(odds.residues_mod(4).unwrap().members(), vec![1, 3]);
    }

    #[test]
    fn classes_unbounded_below_reads_low_zone() {
        let s = ps(2, &[0], &[0, 1], 0, 0, &[]);
        assert_eq!(s.classes_unbounded_below(2).unwrap().members(), vec![0]);
        assert_eq!(
            s.classes_unbounded_below(4).unwrap().members(),
            vec![0, 2]
        );
        assert!(PeriodicSet::naturals()
            .classes_unbounded_below(3)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn min_element_cases() {
        assert_eq!(PeriodicSet::naturals().min_element().unwrap(), 0);
        assert_eq!(PeriodicSet::finite([4, -2, 9]).min_element().unwrap(), -2);
        assert!(matches!(
            PeriodicSet::integers().min_element(),
            Err(Error::UnboundedBelow)
        ));
        assert!(matches!(
            PeriodicSet::empty().min_element(),
            Err(Error::EmptySet)
        ));
        let odd_up = PeriodicSet::residue_classes_from(2, &[7]).unwrap();
        assert_eq!(odd_up.min_element().unwrap(), 7);
    }

    #[test]
    fn ep_form_examples() {
        let g = PeriodicSet::finite([0, 2, 6]);
        let e = EpForm::new(2, vec![1], vec![-3], g).unwrap();
        let w = e.to_set().unwrap();
        for z in [-3, 0, 1, 2, 3, 5, 6, 7, 9, 11] {
            assert!(w.member(z), "expected {z} in W");
        }
        for z in [-4, -2, -1, 4, 8, 10] {
            assert!(!w.member(z), "expected {z} not in W");
        }
    }

    #[test]
    fn ep_form_invariants_rejected() {
        let err = EpForm::new(2, vec![1, 3], vec![], PeriodicSet::empty());
        assert!(matches!(
            err,
            Err(Error::EpForm(EpFormError::DuplicateClassInA { .. }))
        ));

        let err = EpForm::new(2, vec![1], vec![0], PeriodicSet::empty());
        assert!(matches!(
            err,
            Err(Error::EpForm(EpFormError::FOutsideAClasses { f: 0 }))
        ));

        let err = EpForm::new(2, vec![1], vec![3], PeriodicSet::empty());
        assert!(matches!(
            err,
            Err(Error::EpForm(EpFormError::FNotBelowA { f: 3, a: 1 }))
        ));

        let err = EpForm::new(2, vec![1], vec![], PeriodicSet::finite([3]));
        assert!(matches!(
            err,
            Err(Error::EpForm(EpFormError::GMeetsAClasses { residue: 1, .. }))
        ));

        let err = EpForm::new(2, vec![1], vec![], PeriodicSet::integers());
        assert!(matches!(
            err,
            Err(Error::EpForm(EpFormError::GUnboundedBelow))
        ));

        let err = EpForm::new(1, vec![0], vec![], PeriodicSet::finite([1]));
        assert!(matches!(
            err,
            Err(Error::EpForm(EpFormError::GMeetsAClasses { .. }))
        ));
    }

    #[test]
    fn serialization_shape() {
        // odd point inside an even lattice: the middle survives canonicalization
        let s = ps(2, &[0], &[0], 0, 3, &[1]);
        let json = serde_json::to_value(&s).unwrap();
        assert_eq!(json["period"], 2);
        assert_eq!(json["low_res"], serde_json::json!([0]));
        assert_eq!(json["high_res"], serde_json::json!([0]));
        assert_eq!(json["mid"], serde_json::json!([1]));
        assert_eq!(json["mid_lo"], 0);
        assert_eq!(json["mid_hi"], 3);
    }
}
