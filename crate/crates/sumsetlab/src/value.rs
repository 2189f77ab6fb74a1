//! A set value is either an exact periodic description or an explicit
//! windowed enumeration. Windowed values denote exactly their members;
//! points outside the declared window are absent.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modular::ResidueSet;
use crate::oracle::{materialize, Window, WindowSet};
use crate::sets::PeriodicSet;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SetValue {
    Periodic(PeriodicSet),
    Windowed(WindowSet),
}

impl From<PeriodicSet> for SetValue {
    fn from(s: PeriodicSet) -> Self {
        SetValue::Periodic(s)
    }
}

impl From<WindowSet> for SetValue {
    fn from(s: WindowSet) -> Self {
        SetValue::Windowed(s)
    }
}

impl Serialize for SetValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        match self {
            SetValue::Periodic(p) => map.serialize_entry("periodic", p)?,
            SetValue::Windowed(w) => {
                #[derive(Serialize)]
                struct Entry {
                    window: Window,
                    members: Vec<i64>,
                }
                map.serialize_entry(
                    "windowed",
                    &Entry {
                        window: w.window(),
                        members: w.members(),
                    },
                )?;
            }
        }
        map.end()
    }
}

impl SetValue {
    pub fn member(&self, z: i64) -> bool {
        match self {
            SetValue::Periodic(p) => p.member(z),
            SetValue::Windowed(w) => w.contains(z),
        }
    }

    /// Membership for differences that may leave the i64 range.
    pub(crate) fn member_checked(&self, z: i128) -> bool {
        match self {
            SetValue::Periodic(p) => p.member_wide(z),
            SetValue::Windowed(w) => {
                z >= i64::MIN as i128 && z <= i64::MAX as i128 && w.contains(z as i64)
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SetValue::Periodic(p) => p.is_empty(),
            SetValue::Windowed(w) => w.is_empty(),
        }
    }

    pub fn as_periodic(&self) -> Option<&PeriodicSet> {
        match self {
            SetValue::Periodic(p) => Some(p),
            SetValue::Windowed(_) => None,
        }
    }

    pub fn as_windowed(&self) -> Option<&WindowSet> {
        match self {
            SetValue::Windowed(w) => Some(w),
            SetValue::Periodic(_) => None,
        }
    }

    /// Explicit bitset over `window`. For windowed values, points beyond the
    /// declared window come out absent.
    pub fn materialize(&self, window: Window) -> WindowSet {
        match self {
            SetValue::Periodic(p) => materialize(p, window),
            SetValue::Windowed(w) => w.rewindow(window),
        }
    }

    pub fn members_between(&self, lo: i64, hi: i64) -> Vec<i64> {
        match self {
            SetValue::Periodic(p) => p.members_between(lo, hi),
            SetValue::Windowed(w) => w.iter_members().filter(|&z| z >= lo && z <= hi).collect(),
        }
    }

    pub fn min_element(&self) -> Result<i64> {
        match self {
            SetValue::Periodic(p) => p.min_element(),
            SetValue::Windowed(w) => w.min_member().ok_or(Error::EmptySet),
        }
    }

    pub fn bounded_below(&self) -> bool {
        match self {
            SetValue::Periodic(p) => p.bounded_below(),
            SetValue::Windowed(_) => true,
        }
    }

    pub fn residues_mod(&self, n: i64) -> Result<ResidueSet> {
        match self {
            SetValue::Periodic(p) => p.residues_mod(n),
            SetValue::Windowed(w) => ResidueSet::from_values_mod(n, w.iter_members()),
        }
    }

    /// Classes mod n with infinitely many negative members. Windowed values
    /// are finite, so none qualify.
    pub fn classes_unbounded_below(&self, n: i64) -> Result<ResidueSet> {
        match self {
            SetValue::Periodic(p) => p.classes_unbounded_below(n),
            SetValue::Windowed(_) => ResidueSet::empty(n),
        }
    }

    pub fn restrict_to_residues(&self, keep: &ResidueSet) -> Result<SetValue> {
        Ok(match self {
            SetValue::Periodic(p) => SetValue::Periodic(p.restrict_to_residues(keep)?),
            SetValue::Windowed(w) => {
                let mut out = WindowSet::empty(w.window());
                for z in w.iter_members() {
                    if keep.contains(z) {
                        out.insert(z)?;
                    }
                }
                SetValue::Windowed(out)
            }
        })
    }

    pub fn translate(&self, k: i64) -> Result<SetValue> {
        Ok(match self {
            SetValue::Periodic(p) => SetValue::Periodic(p.translate(k)),
            SetValue::Windowed(w) => {
                let window = w.window().translate(k)?;
                let mut out = WindowSet::empty(window);
                for z in w.iter_members() {
                    out.insert(z + k)?;
                }
                SetValue::Windowed(out)
            }
        })
    }

    /// The set without `z`; errors when `z` is not a member.
    pub fn remove_element(&self, z: i64) -> Result<SetValue> {
        if !self.member(z) {
            return Err(Error::NotAnElement(z));
        }
        Ok(match self {
            SetValue::Periodic(p) => {
                SetValue::Periodic(p.difference(&PeriodicSet::finite([z]))?)
            }
            SetValue::Windowed(w) => {
                let mut out = w.clone();
                out.remove(z);
                SetValue::Windowed(out)
            }
        })
    }
}
