//! The line-oriented schedule file format.
//!
//! ```text
//! SCHEDULE ec 7 7
//! DATA d1 2 2
//! SYNDROME s1 a10 a11 a13 a14 a16 a17
//! CHECK c1 a1 a2
//! SEGMENT ec 0 7
//! STEP 1
//! PZ 1 3 a1
//! CNOT 1 3 1 4
//! ```
//!
//! Coordinates are 1-indexed, `#` starts a comment and blank lines are
//! ignored. Steps are numbered 1, 2, ... in order; a step may be empty.

use std::fmt::Write as _;

use ftlat_core::lattice::{Label, LatticeOp, OpKind, Parity, Schedule, Segment, Site, TimeStep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Strict parsing rejects every locality problem up front. Lenient parsing
/// only checks syntax, leaving grid and adjacency rules to validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Lenient,
}

struct Parser {
    mode: Mode,
    line: usize,
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: self.line, message: message.into() })
    }

    fn num(&self, tok: &str, what: &str) -> Result<u8, ParseError> {
        match tok.parse::<u8>() {
            Ok(v) => Ok(v),
            Err(_) => self.err(format!("bad {what} `{tok}`")),
        }
    }

    fn label(&self, tok: &str) -> Result<Label, ParseError> {
        tok.parse::<Label>().or_else(|e| self.err(e.to_string()))
    }

    fn site(&self, s: &Schedule, r: &str, c: &str) -> Result<Site, ParseError> {
        let site = Site::new(self.num(r, "row")?, self.num(c, "column")?);
        let in_grid = s.contains(site);
        if !in_grid && (self.mode == Mode::Strict || site.row == 0 || site.col == 0) {
            return self.err(format!("site {site} outside the {}x{} grid", s.rows, s.cols));
        }
        Ok(site)
    }

    fn arity(&self, toks: &[&str], n: usize, usage: &str) -> Result<(), ParseError> {
        if toks.len() == n {
            Ok(())
        } else {
            self.err(format!("expected `{usage}`"))
        }
    }
}

pub fn parse_schedule(text: &str, mode: Mode) -> Result<Schedule, ParseError> {
    let mut p = Parser { mode, line: 0 };
    let mut sched: Option<Schedule> = None;
    for (i, raw) in text.lines().enumerate() {
        p.line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some(&head) = toks.first() else { continue };
        if head == "SCHEDULE" {
            if sched.is_some() {
                return p.err("duplicate SCHEDULE header");
            }
            p.arity(&toks, 4, "SCHEDULE <name> <rows> <cols>")?;
            let (rows, cols) = (p.num(toks[2], "row count")?, p.num(toks[3], "column count")?);
            if rows == 0 || cols == 0 {
                return p.err("grid must be at least 1x1");
            }
            sched = Some(Schedule::new(toks[1], rows, cols, Vec::new()));
            continue;
        }
        let Some(s) = sched.as_mut() else {
            return p.err("expected SCHEDULE header first");
        };
        match head {
            "DATA" => {
                p.arity(&toks, 4, "DATA d<k> <row> <col>")?;
                if !s.steps.is_empty() {
                    return p.err("DATA must come before the first STEP");
                }
                let l = p.label(toks[1])?;
                if !l.is_data() {
                    return p.err(format!("DATA expects a data label, got {l}"));
                }
                if s.home_of(l).is_some() {
                    return p.err(format!("{l} declared twice"));
                }
                let site = p.site(s, toks[2], toks[3])?;
                s.data_home.push((l, site));
            }
            "SYNDROME" | "CHECK" => {
                if toks.len() < 2 {
                    return p.err(format!("expected `{head} <name> <label>...`"));
                }
                let labels = toks[2..].iter().map(|t| p.label(t)).collect::<Result<Vec<_>, _>>()?;
                let parity = Parity { name: toks[1].to_string(), labels };
                if head == "SYNDROME" {
                    s.syndrome_map.push(parity);
                } else {
                    s.checks.push(parity);
                }
            }
            "SEGMENT" => {
                p.arity(&toks, 4, "SEGMENT <name> <start> <end>")?;
                let bound = |t: &str| t.parse::<usize>().or_else(|_| p.err(format!("bad step bound `{t}`")));
                let (start, end) = (bound(toks[2])?, bound(toks[3])?);
                if start > end {
                    return p.err("segment ends before it starts");
                }
                s.segments.push(Segment { name: toks[1].to_string(), start, end });
            }
            "STEP" => {
                p.arity(&toks, 2, "STEP <t>")?;
                let t: usize = toks[1].parse().or_else(|_| p.err(format!("bad step number `{}`", toks[1])))?;
                if t != s.steps.len() + 1 {
                    return p.err(format!("expected STEP {}, found STEP {t}", s.steps.len() + 1));
                }
                s.steps.push(TimeStep::default());
            }
            mnemonic => {
                let Some(kind) = OpKind::from_mnemonic(mnemonic) else {
                    return p.err(format!("unknown op kind `{mnemonic}`"));
                };
                if s.steps.is_empty() {
                    return p.err("operation before the first STEP");
                }
                let op = match kind {
                    OpKind::PrepX | OpKind::PrepZ => {
                        p.arity(&toks, 4, &format!("{mnemonic} <row> <col> <label>"))?;
                        LatticeOp { kind, a: p.site(s, toks[1], toks[2])?, b: None, label: Some(p.label(toks[3])?) }
                    }
                    OpKind::Hadamard | OpKind::MeasX | OpKind::MeasZ => {
                        p.arity(&toks, 3, &format!("{mnemonic} <row> <col>"))?;
                        LatticeOp { kind, a: p.site(s, toks[1], toks[2])?, b: None, label: None }
                    }
                    OpKind::Cnot | OpKind::Swap => {
                        p.arity(&toks, 5, &format!("{mnemonic} <r1> <c1> <r2> <c2>"))?;
                        let (a, b) = (p.site(s, toks[1], toks[2])?, p.site(s, toks[3], toks[4])?);
                        if mode == Mode::Strict && !a.is_adjacent(b) {
                            return p.err(format!("{mnemonic} on non-adjacent sites {a} and {b}"));
                        }
                        LatticeOp { kind, a, b: Some(b), label: None }
                    }
                };
                s.steps.last_mut().expect("checked above").ops.push(op);
            }
        }
    }
    match sched {
        Some(s) => Ok(s),
        None => Err(ParseError { line: p.line.max(1), message: "missing SCHEDULE header".into() }),
    }
}

pub fn print_schedule(s: &Schedule) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "SCHEDULE {} {} {}", s.name, s.rows, s.cols);
    for (l, h) in &s.data_home {
        let _ = writeln!(w, "DATA {l} {} {}", h.row, h.col);
    }
    let parity = |w: &mut String, head: &str, p: &Parity| {
        let _ = write!(w, "{head} {}", p.name);
        for l in &p.labels {
            let _ = write!(w, " {l}");
        }
        w.push('\n');
    };
    for p in &s.syndrome_map {
        parity(w, "SYNDROME", p);
    }
    for p in &s.checks {
        parity(w, "CHECK", p);
    }
    for g in &s.segments {
        let _ = writeln!(w, "SEGMENT {} {} {}", g.name, g.start, g.end);
    }
    for (t, st) in s.steps.iter().enumerate() {
        let _ = writeln!(w, "STEP {}", t + 1);
        for op in &st.ops {
            let _ = write!(w, "{} {} {}", op.kind.mnemonic(), op.a.row, op.a.col);
            if let Some(b) = op.b {
                let _ = write!(w, " {} {}", b.row, b.col);
            }
            if let Some(l) = op.label.filter(|_| op.kind.is_prep()) {
                let _ = write!(w, " {l}");
            }
            w.push('\n');
        }
    }
    out
}
