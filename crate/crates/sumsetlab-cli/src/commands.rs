//! One handler per subcommand; each returns a Report whose verdict status
//! drives the process exit code.

use std::fmt;

use serde::Serialize;
use sumsetlab::complements::{
    dependents, first_uncovered, gap_stats, greedy_min_complement, is_complement,
    minimality_report, Status, Verdict, Witness,
};
use sumsetlab::constructions::{
    extract_complement, finite_complement_base, has_3ap, inherit_complement, prop11_set,
    self_mac_check,
};
use sumsetlab::error::Error;
use sumsetlab::modular::{search_s_necessary, search_s_sufficient, ResidueSet};
use sumsetlab::oracle::Window;
use sumsetlab::sets::{sumset_contains, EpForm, PeriodicSet};
use sumsetlab::value::SetValue;

use crate::dsl::{self, EvalError, ParseError, SetExpr};
use crate::report::{describe_set, Report, VerdictOut};

#[derive(Debug)]
pub enum CliError {
    Parse { input: String, error: ParseError },
    Eval(EvalError),
    Lib(Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { input, error } => {
                write!(f, "cannot parse '{input}': {error}")
            }
            CliError::Eval(e) => write!(f, "{e}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Eval(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub const DEFAULT_WINDOW_CAP: i64 = 1_000_000;

/// Window span cap: default 10^6, overridable via SUMSETLAB_WINDOW_CAP.
pub fn window_cap() -> CliResult<i64> {
    match std::env::var("SUMSETLAB_WINDOW_CAP") {
        Err(_) => Ok(DEFAULT_WINDOW_CAP),
        Ok(raw) => raw.parse::<i64>().ok().filter(|&v| v > 0).ok_or_else(|| {
            CliError::Usage(format!(
                "SUMSETLAB_WINDOW_CAP must be a positive integer, got '{raw}'"
            ))
        }),
    }
}

/// `LO..HI`, inclusive on both ends.
pub fn parse_window(text: &str, cap: i64) -> CliResult<Window> {
    let (lo_text, hi_text) = text.split_once("..").ok_or_else(|| {
        CliError::Usage(format!("window '{text}' must look like LO..HI"))
    })?;
    let lo: i64 = lo_text.trim().parse().map_err(|_| {
        CliError::Usage(format!("window bound '{lo_text}' is not an integer"))
    })?;
    let hi: i64 = hi_text.trim().parse().map_err(|_| {
        CliError::Usage(format!("window bound '{hi_text}' is not an integer"))
    })?;
    if lo > hi {
        return Err(CliError::Usage(format!("window {lo}..{hi} is empty")));
    }
    let span = hi
        .checked_sub(lo)
        .and_then(|d| d.checked_add(1))
        .ok_or_else(|| CliError::Usage("window bounds overflow".into()))?;
    if span > cap {
        return Err(CliError::Usage(format!(
            "window span {span} exceeds the cap {cap} (override with SUMSETLAB_WINDOW_CAP)"
        )));
    }
    Ok(Window::new(lo, hi)?)
}

fn parse_expr(input: &str) -> CliResult<SetExpr> {
    dsl::parse(input).map_err(|error| CliError::Parse { input: input.to_string(), error })
}

fn eval_expr(input: &str, cap: i64) -> CliResult<SetValue> {
    Ok(dsl::eval(&parse_expr(input)?, cap)?)
}

/// `n=2;A={1};F={};G={0,2,6}` with a finite literal G.
pub fn parse_ep(text: &str) -> CliResult<EpForm> {
    let mut n: Option<i64> = None;
    let mut a: Option<Vec<i64>> = None;
    let mut f: Option<Vec<i64>> = None;
    let mut g: Option<Vec<i64>> = None;
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("ep component '{part}' must look like key=value"))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "n" => {
                n = Some(value.parse().map_err(|_| {
                    CliError::Usage(format!("ep period '{value}' is not an integer"))
                })?);
            }
            "A" | "F" | "G" => {
                let parsed = parse_expr(value)?;
                let vals = match parsed {
                    SetExpr::Literal(vals) => vals,
                    _ => {
                        return Err(CliError::Usage(format!(
                            "ep component {key} must be a finite literal like {{0,2,6}}"
                        )));
                    }
                };
                match key {
                    "A" => a = Some(vals),
                    "F" => f = Some(vals),
                    _ => g = Some(vals),
                }
            }
            other => {
                return Err(CliError::Usage(format!(
                    "unknown ep component '{other}' (expected n, A, F, G)"
                )));
            }
        }
    }
    let n = n.ok_or_else(|| CliError::Usage("ep description is missing n=".into()))?;
    let a = a.ok_or_else(|| CliError::Usage("ep description is missing A=".into()))?;
    let f = f.unwrap_or_default();
    let g = g.ok_or_else(|| CliError::Usage("ep description is missing G=".into()))?;
    Ok(EpForm::new(n, a, f, PeriodicSet::finite(g))?)
}

fn parse_residue_set(text: &str, modulus: i64) -> CliResult<ResidueSet> {
    let parsed = parse_expr(text)?;
    let vals = match parsed {
        SetExpr::Literal(vals) => vals,
        _ => {
            return Err(CliError::Usage(
                "S must be a finite literal of residues like {0}".into(),
            ));
        }
    };
    Ok(ResidueSet::from_values_mod(modulus, vals)?)
}

#[derive(Serialize)]
struct EvalResult {
    value: SetValue,
    members_in_window: Vec<i64>,
}

pub fn cmd_eval(expr: &str, window: &str) -> CliResult<Report> {
    let cap = window_cap()?;
    let win = parse_window(window, cap)?;
    let value = eval_expr(expr, cap)?;
    let note = match &value {
        SetValue::Periodic(_) => {
            "exact periodic value; the window only selects which members to list"
        }
        SetValue::Windowed(_) => "window-backed value; points beyond its window are absent",
    };
    Ok(Report::new("eval", VerdictOut::info(note))
        .input("expr", expr)
        .input("window", window)
        .result(EvalResult {
            members_in_window: value.members_between(win.lo(), win.hi()),
            value,
        }))
}

pub fn cmd_iscomplement(c: &str, w: &str, window: Option<&str>) -> CliResult<Report> {
    let cap = window_cap()?;
    let cv = eval_expr(c, cap)?;
    let wv = eval_expr(w, cap)?;
    let verdict: VerdictOut = match (&cv, &wv) {
        (SetValue::Periodic(cp), SetValue::Periodic(wp)) => {
            let mut v: VerdictOut = is_complement(cp, wp)?.into();
            if window.is_some() {
                v.note.push_str("; the verdict is exact, the window flag was not needed");
            }
            v
        }
        _ => {
            let raw = window.ok_or_else(|| {
                CliError::Usage(
                    "window-backed operands need --window to bound the check".into(),
                )
            })?;
            let win = parse_window(raw, cap)?;
            match first_uncovered(&cv, &wv, win) {
                Some(z) => Verdict::no(
                    Witness::Point(z),
                    format!("{z} has no representation c + w"),
                )
                .into(),
                None => {
                    let mut v = Verdict::yes("every integer in the window is covered");
                    v.window = Some(win);
                    v.into()
                }
            }
        }
    };
    let mut report = Report::new("iscomplement", verdict)
        .input("c", c)
        .input("w", w);
    if let Some(raw) = window {
        report = report.input("window", raw);
    }
    Ok(report)
}

pub fn cmd_isminimal(c: &str, w: &str, window: &str) -> CliResult<Report> {
    let cap = window_cap()?;
    let win = parse_window(window, cap)?;
    let cv = eval_expr(c, cap)?;
    let wv = eval_expr(w, cap)?;
    let report = minimality_report(&cv, &wv, win)?;
    Ok(Report::new("isminimal", report.overall.clone().into())
        .input("c", c)
        .input("w", w)
        .input("window", window)
        .result(&report))
}

#[derive(Serialize)]
struct DependentsResult {
    element: i64,
    dependent_integers: Vec<i64>,
}

pub fn cmd_dependents(c: &str, w: &str, element: i64, window: &str) -> CliResult<Report> {
    let cap = window_cap()?;
    let win = parse_window(window, cap)?;
    let cv = eval_expr(c, cap)?;
    let wv = eval_expr(w, cap)?;
    let deps = dependents(&cv, &wv, element, win)?;
    let verdict = if deps.is_empty() {
        VerdictOut::new(
            Status::Unknown,
            Vec::new(),
            format!("no integer in the window depends on {element}; a wider window may still find one"),
        )
    } else {
        VerdictOut::new(
            Status::CertifiedYes,
            deps.iter().take(4).map(|&z| Witness::Point(z)).collect(),
            format!("{element} is necessary: removing it uncovers {} integer(s) in the window", deps.len()),
        )
    };
    Ok(Report::new("dependents", verdict)
        .input("c", c)
        .input("w", w)
        .input("element", element)
        .input("window", window)
        .result(DependentsResult { element, dependent_integers: deps }))
}

#[derive(Serialize)]
struct SearchResult {
    modulus: i64,
    patterns: Vec<Vec<i64>>,
}

pub fn cmd_search_s(theorem: &str, ep: &str) -> CliResult<Report> {
    let form = parse_ep(ep)?;
    let classes = form.classes()?;
    let found = match theorem {
        "sufficient" => search_s_sufficient(&classes)?,
        "necessary" => search_s_necessary(&classes)?,
        other => {
            return Err(CliError::Usage(format!(
                "--theorem must be 'necessary' or 'sufficient', got '{other}'"
            )));
        }
    };
    let patterns: Vec<Vec<i64>> = found.iter().map(|s| s.members()).collect();
    let note = format!(
        "exhaustive over all {} residue patterns mod {}: {} qualifying S",
        1u64 << form.period(),
        form.period(),
        patterns.len()
    );
    Ok(Report::new("search-s", VerdictOut::info(note))
        .input("theorem", theorem)
        .input("ep", ep)
        .result(SearchResult { modulus: form.period(), patterns }))
}

pub fn cmd_build_finite_w(c: &str, fill_to: i64) -> CliResult<Report> {
    let parsed = parse_expr(c)?;
    let vals = match parsed {
        SetExpr::Literal(vals) => vals,
        _ => return Err(CliError::Usage("--c must be a finite literal like {0,1}".into())),
    };
    let outcome = finite_complement_base(&vals, fill_to)?;
    let c_set = PeriodicSet::finite(vals.iter().copied());

    // certify the construction before reporting it
    let cover = is_complement(&c_set, &outcome.base)?;
    let mut all_dependent = true;
    for (ci, zi) in outcome.witnesses.iter().copied() {
        let rest = PeriodicSet::finite(vals.iter().copied().filter(|&x| x != ci));
        if sumset_contains(&rest, &outcome.base, zi) {
            all_dependent = false;
        }
    }
    let verdict = if cover.status == Status::CertifiedYes && all_dependent {
        VerdictOut::new(
            Status::CertifiedYes,
            Vec::new(),
            "C + W = Z exactly and every element of C has a dependent integer",
        )
    } else {
        // unreachable for valid constructions; report honestly if it ever is
        VerdictOut::new(Status::CertifiedNo, Vec::new(), "construction failed its own certification")
    };
    Ok(Report::new("build finite-w", verdict)
        .input("c", c)
        .input("fill_to", fill_to)
        .result(&outcome))
}

pub fn cmd_build_inherit(ep: &str, s: &str, window: &str) -> CliResult<Report> {
    let cap = window_cap()?;
    let win = parse_window(window, cap)?;
    let form = parse_ep(ep)?;
    let s_set = parse_residue_set(s, form.period())?;
    let d = greedy_min_complement(form.g(), win)?;
    let outcome = inherit_complement(&form, &s_set, &SetValue::Windowed(d), win)?;
    Ok(Report::new("build inherit", outcome.report.overall.clone().into())
        .input("ep", ep)
        .input("s", s)
        .input("window", window)
        .result(&outcome))
}

pub fn cmd_extract_converse(ep: &str, c: &str, window: &str) -> CliResult<Report> {
    let cap = window_cap()?;
    let win = parse_window(window, cap)?;
    let form = parse_ep(ep)?;
    let mut cv = eval_expr(c, cap)?;
    // A C with no downward tail (e.g. a brace literal) can only be a window
    // observation of the real complement, so read it on the window.
    if let SetValue::Periodic(p) = &cv {
        if p.classes_unbounded_below(form.period())?.is_empty() {
            cv = SetValue::Windowed(cv.materialize(win));
        }
    }
    let outcome = extract_complement(&form, &cv, win)?;
    Ok(Report::new("extract converse", outcome.report.overall.clone().into())
        .input("ep", ep)
        .input("c", c)
        .input("window", window)
        .result(&outcome))
}

#[derive(Serialize)]
struct Prop11Result {
    window_lo: i64,
    window_hi: i64,
    count: usize,
    members: Vec<i64>,
}

pub fn cmd_gen_prop11(limit: i64) -> CliResult<Report> {
    let cap = window_cap()?;
    let span = limit
        .checked_mul(4)
        .and_then(|v| v.checked_add(2))
        .ok_or_else(|| CliError::Usage("limit overflows the window arithmetic".into()))?;
    if span > cap {
        return Err(CliError::Usage(format!(
            "prop11 limit {limit} spans {span} integers, over the cap {cap}"
        )));
    }
    let set = prop11_set(limit)?;
    let verdict = match has_3ap(&set) {
        None => VerdictOut::new(
            Status::CertifiedYes,
            Vec::new(),
            "generated set verified 3-AP-free across its whole window",
        ),
        Some((a, b, c)) => VerdictOut::new(
            Status::CertifiedNo,
            vec![Witness::Triple(a, b, c)],
            "generated set unexpectedly contains a 3-AP",
        ),
    };
    let members = set.members();
    Ok(Report::new("gen prop11", verdict)
        .input("limit", limit)
        .result(Prop11Result {
            window_lo: set.window().lo(),
            window_hi: set.window().hi(),
            count: members.len(),
            members,
        }))
}

pub fn cmd_selfmac(expr: &str, window: &str) -> CliResult<Report> {
    let cap = window_cap()?;
    let win = parse_window(window, cap)?;
    let value = eval_expr(expr, cap)?;
    let verdict = self_mac_check(&value, win)?;
    Ok(Report::new("selfmac", verdict.into())
        .input("expr", expr)
        .input("window", window))
}

pub fn cmd_gapstats(expr: &str, window: &str) -> CliResult<Report> {
    let cap = window_cap()?;
    let win = parse_window(window, cap)?;
    let value = eval_expr(expr, cap)?;
    let stats = gap_stats(&value, win)?;
    let summary = describe_set(&value, win);
    Ok(Report::new(
        "gapstats",
        VerdictOut::info(format!("descriptive statistics over the window; {summary}")),
    )
    .input("expr", expr)
    .input("window", window)
    .result(&stats))
}
