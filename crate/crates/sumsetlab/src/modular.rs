//! Residue arithmetic mod n: residue sets, modular sumsets, and the
//! subset-of-Z/n condition checks behind the complement searches.

use crate::error::{Error, Result};
use crate::sets::PeriodicSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Exhaustive searches enumerate all 2^n subsets of Z/n; refuse beyond this.
pub const SEARCH_MODULUS_CAP: i64 = 20;

/// A subset of Z/n, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ResidueSet {
    modulus: i64,
    blocks: Vec<u64>,
}

impl ResidueSet {
    pub fn empty(modulus: i64) -> Result<Self> {
        if modulus < 1 {
            return Err(Error::NonPositiveModulus(modulus));
        }
        let words = (modulus as usize).div_ceil(64);
        Ok(ResidueSet {
            modulus,
            blocks: vec![0; words],
        })
    }

    pub fn full(modulus: i64) -> Result<Self> {
        let mut set = Self::empty(modulus)?;
        for r in 0..modulus {
            set.insert(r);
        }
        Ok(set)
    }

    /// Members must already lie in `0..modulus`.
    pub fn from_members(modulus: i64, members: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut set = Self::empty(modulus)?;
        for r in members {
            if r < 0 || r >= modulus {
                return Err(Error::ResidueOutOfRange {
                    residue: r,
                    modulus,
                });
            }
            set.insert(r);
        }
        Ok(set)
    }

    /// Reduces arbitrary integers mod `modulus`.
    pub fn from_values_mod(modulus: i64, values: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut set = Self::empty(modulus)?;
        for v in values {
            set.insert(v);
        }
        Ok(set)
    }

    pub fn from_mask(modulus: i64, mask: u64) -> Result<Self> {
        if !(1..=64).contains(&modulus) {
            return Err(Error::NonPositiveModulus(modulus));
        }
        let mut set = Self::empty(modulus)?;
        for r in 0..modulus {
            if mask >> r & 1 == 1 {
                set.insert(r);
            }
        }
        Ok(set)
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// Membership of `value mod modulus`; accepts any integer.
    pub fn contains(&self, value: i64) -> bool {
        let r = value.rem_euclid(self.modulus) as usize;
        self.blocks[r / 64] >> (r % 64) & 1 == 1
    }

    /// Same as `contains`, for values that may not fit in i64.
    pub fn contains_wide(&self, value: i128) -> bool {
        let r = value.rem_euclid(self.modulus as i128) as usize;
        self.blocks[r / 64] >> (r % 64) & 1 == 1
    }

    /// Inserts `value mod modulus`.
    pub fn insert(&mut self, value: i64) {
        let r = value.rem_euclid(self.modulus) as usize;
        self.blocks[r / 64] |= 1 << (r % 64);
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.modulus as usize
    }

    pub fn members(&self) -> Vec<i64> {
        (0..self.modulus).filter(|&r| self.contains(r)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.modulus).filter(|&r| self.contains(r))
    }

    fn check_same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let mut out = self.clone();
        for (b, o) in out.blocks.iter_mut().zip(&other.blocks) {
            *b |= o;
        }
        Ok(out)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let mut out = self.clone();
        for (b, o) in out.blocks.iter_mut().zip(&other.blocks) {
            *b &= o;
        }
        Ok(out)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let mut out = self.clone();
        for (b, o) in out.blocks.iter_mut().zip(&other.blocks) {
            *b &= !o;
        }
        Ok(out)
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::empty(self.modulus).expect("modulus already validated");
        for r in 0..self.modulus {
            if !self.contains(r) {
                out.insert(r);
            }
        }
        out
    }

    pub fn remove(&mut self, value: i64) {
        let r = value.rem_euclid(self.modulus) as usize;
        self.blocks[r / 64] &= !(1 << (r % 64));
    }

    /// {(r + offset) mod n : r in self}
    pub fn rotate(&self, offset: i64) -> Self {
        let mut out = Self::empty(self.modulus).expect("modulus already validated");
        for r in self.iter() {
            out.insert(r + offset);
        }
        out
    }

    /// {-r mod n : r in self}
    pub fn reflect(&self) -> Self {
        let mut out = Self::empty(self.modulus).expect("modulus already validated");
        for r in self.iter() {
            out.insert(-r);
        }
        out
    }

    /// {(r + s) mod n : r in self, s in other}
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let mut out = Self::empty(self.modulus)?;
        for r in self.iter() {
            let rotated = other.rotate(r);
            for (b, o) in out.blocks.iter_mut().zip(&rotated.blocks) {
                *b |= o;
            }
        }
        Ok(out)
    }

    /// True when membership is invariant under rotation by `d`.
    pub fn rotation_invariant(&self, d: i64) -> bool {
        (0..self.modulus).all(|r| self.contains(r) == self.contains(r + d))
    }

    /// Projects onto modulus `d` where `d` divides the modulus.
    /// Callers must ensure rotation invariance by `d` for this to be lossless.
    pub fn project(&self, d: i64) -> Result<Self> {
        if d < 1 || self.modulus % d != 0 {
            return Err(Error::NonPositiveModulus(d));
        }
        let mut out = Self::empty(d)?;
        for r in self.iter() {
            out.insert(r % d);
        }
        Ok(out)
    }

    /// Lifts to modulus `m` where the current modulus divides `m`,
    /// keeping the same underlying set of integers.
    pub fn lift(&self, m: i64) -> Result<Self> {
        if m < 1 || m % self.modulus != 0 {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: m,
            });
        }
        let mut out = Self::empty(m)?;
        for r in self.iter() {
            let mut v = r;
            while v < m {
                out.insert(v);
                v += self.modulus;
            }
        }
        Ok(out)
    }

    /// Bitmask form, available for moduli up to 64.
    pub fn as_mask(&self) -> Option<u64> {
        if self.modulus > 64 {
            return None;
        }
        let mut mask = 0u64;
        for r in self.iter() {
            mask |= 1 << r;
        }
        Some(mask)
    }
}

/// {(a + b) mod n : a in A, b in B}
pub fn mod_sumset(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    a.sumset(b)
}

/// Residues mod `modulus` realized by members of `s`.
pub fn mod_project(s: &PeriodicSet, modulus: i64) -> Result<ResidueSet> {
    s.residues_mod(modulus)
}

/// The residue classes mod n occupied by the three parts of an eventually
/// periodic normal form. The condition checks only ever look at classes, so
/// they accept this lighter view and do not re-validate normal form shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EpClasses {
    a: ResidueSet,
    f: ResidueSet,
    g: ResidueSet,
}

impl EpClasses {
    pub fn new(a: ResidueSet, f: ResidueSet, g: ResidueSet) -> Result<Self> {
        a.check_same_modulus(&f)?;
        a.check_same_modulus(&g)?;
        Ok(EpClasses { a, f, g })
    }

    pub fn modulus(&self) -> i64 {
        self.a.modulus
    }

    pub fn a(&self) -> &ResidueSet {
        &self.a
    }

    pub fn f(&self) -> &ResidueSet {
        &self.f
    }

    pub fn g(&self) -> &ResidueSet {
        &self.g
    }

    /// Classes occupied by the whole set: A, F and G together.
    pub fn w(&self) -> ResidueSet {
        self.a
            .union(&self.f)
            .and_then(|u| u.union(&self.g))
            .expect("moduli validated at construction")
    }
}

/// S covers Z/n through W, and removing any s from S leaves some s + g
/// uncovered by what remains. Sets satisfying this make the restriction
/// construction produce a minimal complement.
pub fn check_s_sufficient(classes: &EpClasses, s: &ResidueSet) -> Result<bool> {
    if s.modulus() != classes.modulus() {
        return Err(Error::ModulusMismatch {
            left: s.modulus(),
            right: classes.modulus(),
        });
    }
    let w = classes.w();
    if !s.sumset(&w)?.is_full() {
        return Ok(false);
    }
    for s_res in s.iter() {
        let mut rest = s.clone();
        rest.remove(s_res);
        let reach = rest.sumset(&w)?;
        let escapes = classes.g.iter().any(|g_res| !reach.contains(s_res + g_res));
        if !escapes {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The weaker condition every restriction-built minimal complement must
/// satisfy: S covers Z/n through W, and each s in S has some s + g outside
/// S + A.
pub fn check_s_necessary(classes: &EpClasses, s: &ResidueSet) -> Result<bool> {
    if s.modulus() != classes.modulus() {
        return Err(Error::ModulusMismatch {
            left: s.modulus(),
            right: classes.modulus(),
        });
    }
    let w = classes.w();
    if !s.sumset(&w)?.is_full() {
        return Ok(false);
    }
    let reach = s.sumset(&classes.a)?;
    for s_res in s.iter() {
        let escapes = classes.g.iter().any(|g_res| !reach.contains(s_res + g_res));
        if !escapes {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rot_mask(mask: u64, k: i64, n: i64, full: u64) -> u64 {
    let k = k.rem_euclid(n) as u32;
    if k == 0 {
        return mask;
    }
    ((mask << k) | (mask >> (n as u32 - k))) & full
}

fn mask_sumset(x: u64, y: u64, n: i64, full: u64) -> u64 {
    let mut acc = 0u64;
    for r in 0..n {
        if y >> r & 1 == 1 {
            acc |= rot_mask(x, r, n, full);
        }
    }
    acc
}

struct SearchTables {
    n: i64,
    full: u64,
    w: u64,
    a: u64,
    g: u64,
}

impl SearchTables {
    fn build(classes: &EpClasses) -> Result<Self> {
        let n = classes.modulus();
        if n > SEARCH_MODULUS_CAP {
            return Err(Error::SearchModulusTooLarge {
                modulus: n,
                cap: SEARCH_MODULUS_CAP,
            });
        }
        let full = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        Ok(SearchTables {
            n,
            full,
            w: classes.w().as_mask().expect("modulus capped at 20"),
            a: classes.a.as_mask().expect("modulus capped at 20"),
            g: classes.g.as_mask().expect("modulus capped at 20"),
        })
    }

    fn covers_through_w(&self, s: u64) -> bool {
        mask_sumset(s, self.w, self.n, self.full) == self.full
    }

    fn satisfies_necessary(&self, s: u64) -> bool {
        if !self.covers_through_w(s) {
            return false;
        }
        let reach = mask_sumset(self.a, s, self.n, self.full);
        for r in 0..self.n {
            if s >> r & 1 == 1 && rot_mask(self.g, r, self.n, self.full) & !reach == 0 {
                return false;
            }
        }
        true
    }

    fn satisfies_sufficient(&self, s: u64) -> bool {
        if !self.covers_through_w(s) {
            return false;
        }
        let elems: Vec<i64> = (0..self.n).filter(|&r| s >> r & 1 == 1).collect();
        let rots: Vec<u64> = elems
            .iter()
            .map(|&r| rot_mask(self.w, r, self.n, self.full))
            .collect();
        // reach without element i = prefix[i] | suffix[i + 1]
        let k = elems.len();
        let mut prefix = vec![0u64; k + 1];
        for i in 0..k {
            prefix[i + 1] = prefix[i] | rots[i];
        }
        let mut suffix = vec![0u64; k + 1];
        for i in (0..k).rev() {
            suffix[i] = suffix[i + 1] | rots[i];
        }
        for (i, &r) in elems.iter().enumerate() {
            let reach = prefix[i] | suffix[i + 1];
            if rot_mask(self.g, r, self.n, self.full) & !reach == 0 {
                return false;
            }
        }
        true
    }
}

fn collect_masks(tables: &SearchTables, pred: impl Fn(&SearchTables, u64) -> bool + Sync) -> Vec<u64> {
    let top = 1u64 << tables.n;
    #[cfg(feature = "parallel")]
    {
        let mut found: Vec<u64> = (1..top)
            .into_par_iter()
            .filter(|&m| pred(tables, m))
            .collect();
        found.sort_unstable();
        found
    }
    #[cfg(not(feature = "parallel"))]
    {
        (1..top).filter(|&m| pred(tables, m)).collect()
    }
}

fn masks_to_sets(n: i64, masks: Vec<u64>) -> Vec<ResidueSet> {
    masks
        .into_iter()
        .map(|m| ResidueSet::from_mask(n, m).expect("mask within modulus"))
        .collect()
}

/// All S subseteq Z/n passing `check_s_sufficient`, in ascending bitmask order.
pub fn search_s_sufficient(classes: &EpClasses) -> Result<Vec<ResidueSet>> {
    let tables = SearchTables::build(classes)?;
    let masks = collect_masks(&tables, SearchTables::satisfies_sufficient);
    Ok(masks_to_sets(tables.n, masks))
}

/// All S subseteq Z/n passing `check_s_necessary`, in ascending bitmask order.
pub fn search_s_necessary(classes: &EpClasses) -> Result<Vec<ResidueSet>> {
    let tables = SearchTables::build(classes)?;
    let masks = collect_masks(&tables, SearchTables::satisfies_necessary);
    Ok(masks_to_sets(tables.n, masks))
}

/// Single-threaded variant kept callable for benchmark comparison.
#[doc(hidden)]
pub fn search_s_sufficient_sequential(classes: &EpClasses) -> Result<Vec<ResidueSet>> {
    let tables = SearchTables::build(classes)?;
    let top = 1u64 << tables.n;
    let masks: Vec<u64> = (1..top)
        .filter(|&m| tables.satisfies_sufficient(m))
        .collect();
    Ok(masks_to_sets(tables.n, masks))
}
