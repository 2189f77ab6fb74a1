//! Brute force reference layer: explicit bitsets over an inclusive window.
//! Everything here is defined by direct enumeration, so the periodic
//! machinery can be checked against it pointwise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sets::PeriodicSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Windows wider than this would not fit a desk-scale bitset.
pub const MAX_WINDOW_SPAN: i64 = 1 << 31;

/// Inclusive integer interval [lo, hi].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Window {
    lo: i64,
    hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        let span = hi as i128 - lo as i128 + 1;
        if span > MAX_WINDOW_SPAN as i128 {
            return Err(Error::WindowTooWide {
                span: span.min(i64::MAX as i128) as i64,
                limit: MAX_WINDOW_SPAN,
            });
        }
        Ok(Window { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn span(&self) -> i64 {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, z: i64) -> bool {
        z >= self.lo && z <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// Widen by `k` on both sides.
    pub fn pad(&self, k: i64) -> Result<Self> {
        let lo = self
            .lo
            .checked_sub(k)
            .ok_or(Error::Overflow("padding a window"))?;
        let hi = self
            .hi
            .checked_add(k)
            .ok_or(Error::Overflow("padding a window"))?;
        Window::new(lo, hi)
    }

    pub fn translate(&self, k: i64) -> Result<Self> {
        let lo = self
            .lo
            .checked_add(k)
            .ok_or(Error::Overflow("translating a window"))?;
        let hi = self
            .hi
            .checked_add(k)
            .ok_or(Error::Overflow("translating a window"))?;
        Window::new(lo, hi)
    }
}

/// Explicit finite set of integers inside a declared window.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WindowSet {
    window: Window,
    blocks: Vec<u64>,
}

impl WindowSet {
    pub fn empty(window: Window) -> Self {
        let words = (window.span() as usize).div_ceil(64);
        WindowSet {
            window,
            blocks: vec![0; words],
        }
    }

    pub fn full(window: Window) -> Self {
        let mut out = Self::empty(window);
        for w in out.blocks.iter_mut() {
            *w = u64::MAX;
        }
        out.mask_tail();
        out
    }

    pub fn from_members(window: Window, members: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut out = Self::empty(window);
        for z in members {
            out.insert(z)?;
        }
        Ok(out)
    }

    fn mask_tail(&mut self) {
        let bits = self.window.span() as usize;
        let rem = bits % 64;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn contains(&self, z: i64) -> bool {
        if !self.window.contains(z) {
            return false;
        }
        let idx = (z - self.window.lo) as usize;
        self.blocks[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn insert(&mut self, z: i64) -> Result<()> {
        if !self.window.contains(z) {
            return Err(Error::OutsideWindow(z));
        }
        let idx = (z - self.window.lo) as usize;
        self.blocks[idx / 64] |= 1 << (idx % 64);
        Ok(())
    }

    pub fn remove(&mut self, z: i64) {
        if self.window.contains(z) {
            let idx = (z - self.window.lo) as usize;
            self.blocks[idx / 64] &= !(1 << (idx % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn members(&self) -> Vec<i64> {
        self.iter_members().collect()
    }

    pub fn iter_members(&self) -> impl Iterator<Item = i64> + '_ {
        self.window.iter().filter(|&z| self.contains(z))
    }

    pub fn min_member(&self) -> Option<i64> {
        self.iter_members().next()
    }

    /// True when every point of `w` is a member.
    pub fn covers(&self, w: Window) -> bool {
        self.first_missing(w).is_none()
    }

    /// First point of `w` that is not a member.
    pub fn first_missing(&self, w: Window) -> Option<i64> {
        w.iter().find(|&z| !self.contains(z))
    }

    /// Complement within the declared window.
    pub fn complement(&self) -> WindowSet {
        let mut out = WindowSet {
            window: self.window,
            blocks: self.blocks.iter().map(|b| !b).collect(),
        };
        out.mask_tail();
        out
    }

    /// Same members viewed in another window; members outside are dropped.
    pub fn rewindow(&self, window: Window) -> WindowSet {
        let mut out = WindowSet::empty(window);
        for z in self.iter_members() {
            if window.contains(z) {
                out.insert(z).expect("checked in-window");
            }
        }
        out
    }
}

/// Evaluate a periodic set pointwise over a window.
pub fn materialize(s: &PeriodicSet, window: Window) -> WindowSet {
    let mut out = WindowSet::empty(window);
    for z in window.iter() {
        if s.member(z) {
            out.insert(z).expect("in window");
        }
    }
    out
}

/// Structural equality; refuses to compare sets over different windows.
pub fn equal(x: &WindowSet, y: &WindowSet) -> Result<bool> {
    if x.window != y.window {
        return Err(Error::WindowMismatch {
            left_lo: x.window.lo,
            left_hi: x.window.hi,
            right_lo: y.window.lo,
            right_hi: y.window.hi,
        });
    }
    Ok(x.blocks == y.blocks)
}

fn mark_row(acc: &mut WindowSet, xv: i64, y: &[i64], target: Window) {
    for &yv in y {
        let sum = xv + yv;
        if target.contains(sum) {
            acc.insert(sum).expect("in window");
        }
    }
}

/// {x + y} clipped to `target`, by direct enumeration of both supports.
pub fn window_sumset(x: &WindowSet, y: &WindowSet, target: Window) -> WindowSet {
    let xs = x.members();
    let ys = y.members();
    #[cfg(feature = "parallel")]
    {
        // Only fan out when the support product is worth the thread traffic.
        if xs.len().saturating_mul(ys.len()) >= 1 << 20 && xs.len() >= 2 {
            return xs
                .par_chunks(xs.len().div_ceil(rayon::current_num_threads().max(1) * 4))
                .map(|chunk| {
                    let mut acc = WindowSet::empty(target);
                    for &xv in chunk {
                        mark_row(&mut acc, xv, &ys, target);
                    }
                    acc
                })
                .reduce(
                    || WindowSet::empty(target),
                    |mut a, b| {
                        for (da, db) in a.blocks.iter_mut().zip(&b.blocks) {
                            *da |= db;
                        }
                        a
                    },
                );
        }
    }
    let mut acc = WindowSet::empty(target);
    for &xv in &xs {
        mark_row(&mut acc, xv, &ys, target);
    }
    acc
}

/// Single-threaded variant kept callable for benchmark comparison.
#[doc(hidden)]
pub fn window_sumset_sequential(x: &WindowSet, y: &WindowSet, target: Window) -> WindowSet {
    let ys = y.members();
    let mut acc = WindowSet::empty(target);
    for xv in x.iter_members() {
        mark_row(&mut acc, xv, &ys, target);
    }
    acc
}

/// Padding wide enough that a windowed sumset agrees with the exact one on
/// the target: two combined periods plus both explicit middles.
pub fn sumset_padding(s: &PeriodicSet, t: &PeriodicSet) -> Result<i64> {
    let g = num_integer::Integer::gcd(&s.period(), &t.period());
    let l = s.period() / g * t.period();
    let diam_s = s.mid_hi() - s.mid_lo();
    let diam_t = t.mid_hi() - t.mid_lo();
    let bound_s = s.mid_lo().abs().max(s.mid_hi().abs());
    let bound_t = t.mid_lo().abs().max(t.mid_hi().abs());
    2i64.checked_mul(l)
        .and_then(|v| v.checked_add(diam_s))
        .and_then(|v| v.checked_add(diam_t))
        .and_then(|v| v.checked_add(bound_s))
        .and_then(|v| v.checked_add(bound_t))
        .ok_or(Error::Overflow("computing sumset padding"))
}
