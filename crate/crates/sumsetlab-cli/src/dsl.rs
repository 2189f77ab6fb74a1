//! Set-expression language: parsing, printing, evaluation.
//!
//! Precedence, tightest first: unary `-`, then `+` (sumset), `&`, `\`, `|`.
//! Atoms: `{1,2,3}`, `Z`, `N`, `res(n: r,...)`, `resN(n: r,...)`,
//! `ep(n; {A}; {F}; G)`, `prop11(limit)`, `shift(expr, k)`, parentheses.
//!
//! Evaluation is exact while every operand is periodic. `prop11` produces a
//! window-backed set; any operation touching one reports on a derived window
//! (the operand windows' hull for the boolean operations, their sum for `+`)
//! and treats points beyond a declared window as absent.

use std::fmt;

use sumsetlab::constructions::prop11_set;
use sumsetlab::oracle::{window_sumset, Window, WindowSet};
use sumsetlab::sets::{EpForm, PeriodicSet};
use sumsetlab::value::SetValue;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SetExpr {
    Literal(Vec<i64>),
    Integers,
    Naturals,
    Res { modulus: i64, residues: Vec<i64> },
    ResN { modulus: i64, residues: Vec<i64> },
    Ep { period: i64, a: Vec<i64>, f: Vec<i64>, g: Box<SetExpr> },
    Prop11(i64),
    Shift(Box<SetExpr>, i64),
    Negate(Box<SetExpr>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    Difference(Box<SetExpr>, Box<SetExpr>),
    Sumset(Box<SetExpr>, Box<SetExpr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Pipe,
    Amp,
    Backslash,
    Plus,
    Minus,
    Int(i64),
    Ident(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LBrace => write!(f, "'{{'"),
            Tok::RBrace => write!(f, "'}}'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::Semi => write!(f, "';'"),
            Tok::Colon => write!(f, "':'"),
            Tok::Pipe => write!(f, "'|'"),
            Tok::Amp => write!(f, "'&'"),
            Tok::Backslash => write!(f, "'\\'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Int(v) => write!(f, "integer {v}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match ch {
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '{' | '}' | '(' | ')' | ',' | ';' | ':' | '|' | '&' | '\\' | '+' | '-' => {
                chars.next();
                bump(ch, &mut line, &mut col);
                let tok = match ch {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    '|' => Tok::Pipe,
                    '&' => Tok::Amp,
                    '\\' => Tok::Backslash,
                    '+' => Tok::Plus,
                    _ => Tok::Minus,
                };
                out.push(Spanned { tok, line: tline, col: tcol });
            }
            c if c.is_ascii_digit() => {
                let mut lit = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        lit.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                let v: i64 = lit.parse().map_err(|_| ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("integer '{lit}' is out of the supported range"),
                })?;
                out.push(Spanned { tok: Tok::Int(v), line: tline, col: tcol });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(name), line: tline, col: tcol });
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].line, self.toks[self.pos].col)
    }

    fn err(&self, message: String) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, message }
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.advance();
            Ok(())
        } else {
            Err(self.err(format!("expected {want}, found {}", self.peek())))
        }
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        let neg = if *self.peek() == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        match self.advance() {
            Tok::Int(v) => {
                if neg {
                    v.checked_neg().ok_or_else(|| self.err("integer overflow".into()))
                } else {
                    Ok(v)
                }
            }
            other => Err(self.err(format!("expected an integer, found {other}"))),
        }
    }

    /// `{}` or `{a, b, c}`
    fn parse_braceset(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut vals = Vec::new();
        if *self.peek() != Tok::RBrace {
            vals.push(self.parse_int()?);
            while *self.peek() == Tok::Comma {
                self.advance();
                vals.push(self.parse_int()?);
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(vals)
    }

    fn parse_int_list(&mut self) -> Result<Vec<i64>, ParseError> {
        let mut vals = vec![self.parse_int()?];
        while *self.peek() == Tok::Comma {
            self.advance();
            vals.push(self.parse_int()?);
        }
        Ok(vals)
    }

    fn parse_expr(&mut self) -> Result<SetExpr, ParseError> {
        let mut left = self.parse_diff()?;
        while *self.peek() == Tok::Pipe {
            self.advance();
            let right = self.parse_diff()?;
            left = SetExpr::Union(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn parse_diff(&mut self) -> Result<SetExpr, ParseError> {
        let mut left = self.parse_inter()?;
        while *self.peek() == Tok::Backslash {
            self.advance();
            let right = self.parse_inter()?;
            left = SetExpr::Difference(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn parse_inter(&mut self) -> Result<SetExpr, ParseError> {
        let mut left = self.parse_sum()?;
        while *self.peek() == Tok::Amp {
            self.advance();
            let right = self.parse_sum()?;
            left = SetExpr::Intersect(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn parse_sum(&mut self) -> Result<SetExpr, ParseError> {
        let mut left = self.parse_unary()?;
        while *self.peek() == Tok::Plus {
            self.advance();
            let right = self.parse_unary()?;
            left = SetExpr::Sumset(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn parse_unary(&mut self) -> Result<SetExpr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.advance();
            let inner = self.parse_unary()?;
            Ok(SetExpr::Negate(Box::new(inner)))
        } else {
            self.parse_atom()
        }
    }

    fn parse_atom(&mut self) -> Result<SetExpr, ParseError> {
        match self.peek().clone() {
            Tok::LBrace => Ok(SetExpr::Literal(self.parse_braceset()?)),
            Tok::LParen => {
                self.advance();
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.advance();
                match name.as_str() {
                    "Z" => Ok(SetExpr::Integers),
                    "N" => Ok(SetExpr::Naturals),
                    "res" | "resN" => {
                        self.expect(Tok::LParen)?;
                        let modulus = self.parse_int()?;
                        self.expect(Tok::Colon)?;
                        let residues = self.parse_int_list()?;
                        self.expect(Tok::RParen)?;
                        if name == "res" {
                            Ok(SetExpr::Res { modulus, residues })
                        } else {
                            Ok(SetExpr::ResN { modulus, residues })
                        }
                    }
                    "ep" => {
                        self.expect(Tok::LParen)?;
                        let period = self.parse_int()?;
                        self.expect(Tok::Semi)?;
                        let a = self.parse_braceset()?;
                        self.expect(Tok::Semi)?;
                        let f = self.parse_braceset()?;
                        self.expect(Tok::Semi)?;
                        let g = self.parse_expr()?;
                        self.expect(Tok::RParen)?;
                        Ok(SetExpr::Ep { period, a, f, g: Box::new(g) })
                    }
                    "prop11" => {
                        self.expect(Tok::LParen)?;
                        let limit = self.parse_int()?;
                        self.expect(Tok::RParen)?;
                        Ok(SetExpr::Prop11(limit))
                    }
                    "shift" => {
                        self.expect(Tok::LParen)?;
                        let inner = self.parse_expr()?;
                        self.expect(Tok::Comma)?;
                        let k = self.parse_int()?;
                        self.expect(Tok::RParen)?;
                        Ok(SetExpr::Shift(Box::new(inner), k))
                    }
                    other => Err(self.err(format!("unknown name '{other}'"))),
                }
            }
            other => Err(self.err(format!("expected a set expression, found {other}"))),
        }
    }
}

pub fn parse(text: &str) -> Result<SetExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let expr = p.parse_expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.err(format!("trailing input starting with {}", p.peek())));
    }
    Ok(expr)
}

/// Binding strength; larger binds tighter.
fn level(e: &SetExpr) -> u8 {
    match e {
        SetExpr::Union(..) => 1,
        SetExpr::Difference(..) => 2,
        SetExpr::Intersect(..) => 3,
        SetExpr::Sumset(..) => 4,
        SetExpr::Negate(..) => 5,
        _ => 6,
    }
}

fn fmt_child(e: &SetExpr, parent: u8, right_side: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let needs = level(e) < parent || (right_side && level(e) == parent);
    if needs {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn fmt_list(vals: &[i64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{{")?;
    for (i, v) in vals.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, "}}")
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Literal(vals) => fmt_list(vals, f),
            SetExpr::Integers => write!(f, "Z"),
            SetExpr::Naturals => write!(f, "N"),
            SetExpr::Res { modulus, residues } => {
                let strs: Vec<String> = residues.iter().map(|r| r.to_string()).collect();
                write!(f, "res({modulus}:{})", strs.join(","))
            }
            SetExpr::ResN { modulus, residues } => {
                let strs: Vec<String> = residues.iter().map(|r| r.to_string()).collect();
                write!(f, "resN({modulus}:{})", strs.join(","))
            }
            SetExpr::Ep { period, a, f: fs, g } => {
                write!(f, "ep({period};")?;
                fmt_list(a, f)?;
                write!(f, ";")?;
                fmt_list(fs, f)?;
                write!(f, ";{g})")
            }
            SetExpr::Prop11(limit) => write!(f, "prop11({limit})"),
            SetExpr::Shift(inner, k) => write!(f, "shift({inner},{k})"),
            SetExpr::Negate(inner) => {
                write!(f, "-")?;
                fmt_child(inner, 5, false, f)
            }
            SetExpr::Union(a, b) => {
                fmt_child(a, 1, false, f)?;
                write!(f, " | ")?;
                fmt_child(b, 1, true, f)
            }
            SetExpr::Difference(a, b) => {
                fmt_child(a, 2, false, f)?;
                write!(f, " \\ ")?;
                fmt_child(b, 2, true, f)
            }
            SetExpr::Intersect(a, b) => {
                fmt_child(a, 3, false, f)?;
                write!(f, " & ")?;
                fmt_child(b, 3, true, f)
            }
            SetExpr::Sumset(a, b) => {
                fmt_child(a, 4, false, f)?;
                write!(f, " + ")?;
                fmt_child(b, 4, true, f)
            }
        }
    }
}

#[derive(Debug)]
pub enum EvalError {
    Lib(sumsetlab::error::Error),
    Message(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Lib(e) => write!(f, "{e}"),
            EvalError::Message(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<sumsetlab::error::Error> for EvalError {
    fn from(e: sumsetlab::error::Error) -> Self {
        EvalError::Lib(e)
    }
}

fn msg(m: impl Into<String>) -> EvalError {
    EvalError::Message(m.into())
}

fn capped_window(lo: i64, hi: i64, cap: i64) -> Result<Window, EvalError> {
    let span = hi
        .checked_sub(lo)
        .and_then(|d| d.checked_add(1))
        .ok_or_else(|| msg("window bounds overflow"))?;
    if span > cap {
        return Err(msg(format!(
            "window span {span} exceeds the cap {cap} (override with SUMSETLAB_WINDOW_CAP)"
        )));
    }
    Ok(Window::new(lo, hi)?)
}

fn materialize_on(v: &SetValue, target: Window) -> WindowSet {
    v.materialize(target)
}

fn boolean_on_window(
    a: &SetValue,
    b: &SetValue,
    target: Window,
    keep: impl Fn(bool, bool) -> bool,
) -> Result<SetValue, EvalError> {
    let xa = materialize_on(a, target);
    let xb = materialize_on(b, target);
    let mut out = WindowSet::empty(target);
    for z in target.iter() {
        if keep(xa.contains(z), xb.contains(z)) {
            out.insert(z)?;
        }
    }
    Ok(SetValue::Windowed(out))
}

fn window_of(v: &SetValue) -> Option<Window> {
    match v {
        SetValue::Periodic(_) => None,
        SetValue::Windowed(w) => Some(w.window()),
    }
}

/// Hull for the boolean operations on window-backed values; a periodic
/// operand adopts the other side's window.
fn boolean_target(a: &SetValue, b: &SetValue, cap: i64) -> Result<Option<Window>, EvalError> {
    Ok(match (window_of(a), window_of(b)) {
        (None, None) => None,
        (Some(w), None) | (None, Some(w)) => Some(w),
        (Some(wa), Some(wb)) => Some(capped_window(
            wa.lo().min(wb.lo()),
            wa.hi().max(wb.hi()),
            cap,
        )?),
    })
}

pub fn eval_union(a: &SetValue, b: &SetValue, cap: i64) -> Result<SetValue, EvalError> {
    match boolean_target(a, b, cap)? {
        None => match (a, b) {
            (SetValue::Periodic(x), SetValue::Periodic(y)) => Ok(SetValue::Periodic(x.union(y)?)),
            _ => unreachable!(),
        },
        Some(t) => boolean_on_window(a, b, t, |x, y| x || y),
    }
}

pub fn eval_intersect(a: &SetValue, b: &SetValue, cap: i64) -> Result<SetValue, EvalError> {
    match boolean_target(a, b, cap)? {
        None => match (a, b) {
            (SetValue::Periodic(x), SetValue::Periodic(y)) => {
                Ok(SetValue::Periodic(x.intersect(y)?))
            }
            _ => unreachable!(),
        },
        Some(t) => boolean_on_window(a, b, t, |x, y| x && y),
    }
}

pub fn eval_difference(a: &SetValue, b: &SetValue, cap: i64) -> Result<SetValue, EvalError> {
    match boolean_target(a, b, cap)? {
        None => match (a, b) {
            (SetValue::Periodic(x), SetValue::Periodic(y)) => {
                Ok(SetValue::Periodic(x.difference(y)?))
            }
            _ => unreachable!(),
        },
        Some(t) => boolean_on_window(a, b, t, |x, y| x && !y),
    }
}

pub fn eval_sumset(a: &SetValue, b: &SetValue, cap: i64) -> Result<SetValue, EvalError> {
    match (a, b) {
        (SetValue::Periodic(x), SetValue::Periodic(y)) => Ok(SetValue::Periodic(x.sumset(y)?)),
        (SetValue::Windowed(x), SetValue::Windowed(y)) => {
            let target = capped_window(
                x.window()
                    .lo()
                    .checked_add(y.window().lo())
                    .ok_or_else(|| msg("sum window overflow"))?,
                x.window()
                    .hi()
                    .checked_add(y.window().hi())
                    .ok_or_else(|| msg("sum window overflow"))?,
                cap,
            )?;
            Ok(SetValue::Windowed(window_sumset(x, y, target)))
        }
        (SetValue::Windowed(x), SetValue::Periodic(p))
        | (SetValue::Periodic(p), SetValue::Windowed(x)) => {
            // report on the windowed operand's window; pull in every periodic
            // element that can land a sum there
            let target = x.window();
            let plo = target
                .lo()
                .checked_sub(x.window().hi())
                .ok_or_else(|| msg("sum window overflow"))?;
            let phi = target
                .hi()
                .checked_sub(x.window().lo())
                .ok_or_else(|| msg("sum window overflow"))?;
            let px = sumsetlab::oracle::materialize(p, Window::new(plo, phi)?);
            Ok(SetValue::Windowed(window_sumset(x, &px, target)))
        }
    }
}

pub fn eval_negate(a: &SetValue) -> Result<SetValue, EvalError> {
    Ok(match a {
        SetValue::Periodic(p) => SetValue::Periodic(p.negate()),
        SetValue::Windowed(w) => {
            let win = Window::new(-w.window().hi(), -w.window().lo())?;
            let mut out = WindowSet::empty(win);
            for m in w.iter_members() {
                out.insert(-m)?;
            }
            SetValue::Windowed(out)
        }
    })
}

pub fn eval(expr: &SetExpr, cap: i64) -> Result<SetValue, EvalError> {
    match expr {
        SetExpr::Literal(vals) => Ok(SetValue::Periodic(PeriodicSet::finite(vals.iter().copied()))),
        SetExpr::Integers => Ok(SetValue::Periodic(PeriodicSet::integers())),
        SetExpr::Naturals => Ok(SetValue::Periodic(PeriodicSet::naturals())),
        SetExpr::Res { modulus, residues } => Ok(SetValue::Periodic(
            PeriodicSet::residue_classes(*modulus, residues)?,
        )),
        SetExpr::ResN { modulus, residues } => Ok(SetValue::Periodic(
            PeriodicSet::residue_classes_from(*modulus, residues)?,
        )),
        SetExpr::Ep { period, a, f, g } => {
            let g_val = eval(g, cap)?;
            let g_set = match g_val {
                SetValue::Periodic(p) => p,
                SetValue::Windowed(_) => {
                    return Err(msg("the sporadic part G of ep(...) must be an exact expression"));
                }
            };
            let form = EpForm::new(*period, a.clone(), f.clone(), g_set)?;
            Ok(SetValue::Periodic(form.to_set()?))
        }
        SetExpr::Prop11(limit) => {
            let span = limit
                .checked_mul(4)
                .and_then(|v| v.checked_add(2))
                .ok_or_else(|| msg("prop11 limit overflow"))?;
            if span > cap {
                return Err(msg(format!(
                    "prop11({limit}) spans {span} integers, over the cap {cap}"
                )));
            }
            Ok(SetValue::Windowed(prop11_set(*limit)?))
        }
        SetExpr::Shift(inner, k) => Ok(eval(inner, cap)?.translate(*k)?),
        SetExpr::Negate(inner) => eval_negate(&eval(inner, cap)?),
        SetExpr::Union(a, b) => eval_union(&eval(a, cap)?, &eval(b, cap)?, cap),
        SetExpr::Intersect(a, b) => eval_intersect(&eval(a, cap)?, &eval(b, cap)?, cap),
        SetExpr::Difference(a, b) => eval_difference(&eval(a, cap)?, &eval(b, cap)?, cap),
        SetExpr::Sumset(a, b) => eval_sumset(&eval(a, cap)?, &eval(b, cap)?, cap),
    }
}
