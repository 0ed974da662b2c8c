use std::fmt::Write as _;
use std::path::Path;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use anyhow::Result;

use crate::input;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Informational line from a single query.
    Info,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

/// How an expected value is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// A published closed form or theorem.
    Claim,
    /// An independent computation.
    Oracle,
    /// Holds by construction.
    Trivial,
    None,
}

impl Basis {
    fn as_str(self) -> &'static str {
        match self {
            Basis::Claim => "claim",
            Basis::Oracle => "oracle",
            Basis::Trivial => "trivial",
            Basis::None => "",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Line {
    pub id: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub basis: Basis,
    pub anchor: String,
    pub reason: Option<String>,
    pub elapsed: Option<Duration>,
}

impl Line {
    pub fn info(id: impl Into<String>, computed: impl ToString) -> Self {
        Line {
            id: id.into(),
            status: Status::Info,
            computed: computed.to_string(),
            expected: "-".into(),
            basis: Basis::None,
            anchor: "-".into(),
            reason: None,
            elapsed: None,
        }
    }

    fn expected_field(&self) -> String {
        match self.basis {
            Basis::None => self.expected.clone(),
            b => format!("{}({})", self.expected, b.as_str()),
        }
    }
}

fn field(s: &str) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s.replace(char::is_whitespace, "_")
    }
}

/// One line per check: `<check-id> <status> <computed> <expected> <anchor>`.
pub fn machine(lines: &[Line]) -> String {
    let mut out = String::new();
    for l in lines {
        let _ = writeln!(
            out,
            "{} {} {} {} {}",
            field(&l.id),
            l.status.as_str(),
            field(&l.computed),
            field(&l.expected_field()),
            field(&l.anchor)
        );
    }
    out
}

pub fn table(lines: &[Line]) -> String {
    let id_w = lines.iter().map(|l| l.id.len()).max().unwrap_or(0).max(5);
    let comp_w = lines.iter().map(|l| l.computed.chars().count()).max().unwrap_or(0).clamp(8, 24);
    let exp_w = lines.iter().map(|l| l.expected_field().chars().count()).max().unwrap_or(0).clamp(8, 24);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<id_w$}  {:<6} {:<comp_w$}  {:<exp_w$}  {:>9}  anchor",
        "check", "status", "computed", "expected", "time"
    );
    for l in lines {
        let time = l.elapsed.map(|d| format!("{:.2}s", d.as_secs_f64())).unwrap_or_default();
        let _ = writeln!(
            out,
            "{:<id_w$}  {:<6} {:<comp_w$}  {:<exp_w$}  {:>9}  {}",
            l.id,
            l.status.as_str(),
            l.computed,
            l.expected_field(),
            time,
            l.anchor
        );
        if let Some(why) = &l.reason {
            let _ = writeln!(out, "{:<id_w$}  -> {why}", "");
        }
    }
    out
}

pub fn write_machine(path: Option<&Path>, lines: &[Line]) -> Result<()> {
    match path {
        Some(p) => input::write(p, &machine(lines)),
        None => Ok(()),
    }
}

#[derive(Debug)]
pub struct TimedOut(pub Duration);

/// Runs `job` on a worker thread and gives up after `limit`. A job that
/// times out keeps running detached; the process exit reaps it.
pub fn with_timeout<T: Send + 'static>(
    limit: Duration,
    job: impl FnOnce() -> T + Send + 'static,
) -> (std::result::Result<T, TimedOut>, Duration) {
    let start = Instant::now();
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(job());
    });
    let result = rx.recv_timeout(limit).map_err(|_| TimedOut(limit));
    (result, start.elapsed())
}
