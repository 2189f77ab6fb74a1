//! Exact arithmetic for additive complements of integer sets.
//!
//! The central representation is [`PeriodicSet`]: a set of integers that is
//! eventually periodic in both directions, stored as a low pattern, an
//! explicit middle, and a high pattern, always in canonical form so that
//! structural equality decides set equality. On top of it sit exact sumset
//! computation, complement and minimality certification ([`complements`]),
//! residue-class searches for restriction patterns ([`modular`]), the
//! complement constructions ([`constructions`]), and a windowed bitset
//! oracle ([`oracle`]) against which everything else is tested.
//!
//! Certification verdicts are three-valued: a [`Status`] of `CertifiedYes`
//! or `CertifiedNo` is backed by a finite witness or an exhaustive exact
//! computation, and anything resting on an unverified extrapolation is
//! reported as `Unknown` rather than guessed.

pub mod complements;
pub mod constructions;
pub mod error;
pub mod modular;
pub mod oracle;
pub mod sets;
pub mod value;

pub use complements::{
    dependents, first_uncovered, gap_stats, greedy_min_complement, is_complement,
    minimality_report, ElementFinding, ElementReport, GapStats, MinimalityReport, Status,
    Verdict, Witness,
};
pub use constructions::{
    extract_complement, finite_complement_base, has_3ap, inherit_complement, is_ternary_01,
    prop11_set, self_mac_check, ternary_01_values, ternary_fix, ExtractCase, ExtractOutcome,
    FiniteBaseOutcome, InheritOutcome, TernaryFix,
};
pub use error::{EpFormError, Error, Result};
pub use modular::{
    check_s_necessary, check_s_sufficient, mod_project, mod_sumset, search_s_necessary,
    search_s_sufficient, EpClasses, ResidueSet, SEARCH_MODULUS_CAP,
};
pub use oracle::{materialize, window_sumset, Window, WindowSet, MAX_WINDOW_SPAN};
pub use sets::{
    from_ep_form, sumset_contains, BoolOp, EpForm, PeriodicSet, DEFAULT_PERIOD_CAP,
};
pub use value::SetValue;
