//! Batch comparison of the two indices over graph6 streams.
//!
//! For each graph the scan computes `s` and `d` and checks whether
//! `⌈s/2⌉ ≤ d ≤ s` holds and whether `d = ⌈s/2⌉`.

use labindex_core::bounds::BoundHints;
use labindex_core::solver::{IndexValue, SolveOptions};
use labindex_core::IndexKind;
use rayon::prelude::*;
use rayon::ThreadPool;
use serde_json::{json, Value};

use crate::formats::parse_graph6;
use crate::parallel::{solve, Limits};

/// Where a graph lands in the comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    /// `d = ⌈s/2⌉`.
    Equality,
    /// `⌈s/2⌉ < d ≤ s`.
    Strict,
    /// `d < ⌈s/2⌉` or `d > s`.
    Violation,
    /// A budget ran out before the comparison was decided.
    Unknown,
    /// The line did not parse or the graph has no edges.
    Error,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Equality => "equality",
            Category::Strict => "strict-inequality",
            Category::Violation => "violation",
            Category::Unknown => "unknown",
            Category::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    /// 1-based input line.
    pub line: usize,
    pub graph6: String,
    pub n: Option<usize>,
    pub s: Option<IndexValue>,
    pub d: Option<IndexValue>,
    /// `⌈s/2⌉` when `s` is exact.
    pub half_s: Option<usize>,
    pub bounds_hold: Option<bool>,
    pub equality_holds: Option<bool>,
    pub budget_exhausted: bool,
    pub category: Category,
    pub error: Option<String>,
}

fn half(x: usize) -> usize {
    x.div_ceil(2)
}

/// Decides `⌈s/2⌉ ≤ d ≤ s` and `d = ⌈s/2⌉` where the intervals allow it.
pub fn compare(s: IndexValue, d: IndexValue) -> (Option<bool>, Option<bool>) {
    let (sl, su, dl, du) = (s.lower(), s.upper(), d.lower(), d.upper());
    let holds = if half(su) <= dl && du <= sl {
        Some(true)
    } else if du < half(sl) || dl > su {
        Some(false)
    } else {
        None
    };
    let equal = match (s.exact(), d.exact()) {
        (Some(s), Some(d)) => Some(d == half(s)),
        _ if dl > half(su) || du < half(sl) => Some(false),
        _ => None,
    };
    (holds, equal)
}

impl ScanRecord {
    fn error(line: usize, graph6: &str, msg: String) -> Self {
        ScanRecord {
            line,
            graph6: graph6.to_string(),
            n: None,
            s: None,
            d: None,
            half_s: None,
            bounds_hold: None,
            equality_holds: None,
            budget_exhausted: false,
            category: Category::Error,
            error: Some(msg),
        }
    }

    pub fn to_json(&self) -> Value {
        let index = |v: Option<IndexValue>| match v {
            Some(IndexValue::Exact(x)) => json!(x),
            Some(IndexValue::Interval { lower, upper }) => json!({ "lower": lower, "upper": upper }),
            None => Value::Null,
        };
        let mut o = json!({
            "line": self.line,
            "graph6": self.graph6,
            "n": self.n,
            "s": index(self.s),
            "d": index(self.d),
            "half_s": self.half_s,
            "conjecture_holds": self.bounds_hold,
            "equality_holds": self.equality_holds,
            "budget_exhausted": self.budget_exhausted,
            "category": self.category.as_str(),
        });
        if let Some(e) = &self.error {
            o["error"] = json!(e);
        }
        o
    }
}

/// Computes the record for one graph6 line.
pub fn scan_line(pool: &ThreadPool, line: usize, text: &str, limits: Limits) -> ScanRecord {
    let text = text.trim();
    let g = match parse_graph6(text) {
        Ok(g) => g,
        Err(e) => return ScanRecord::error(line, text, e.to_string()),
    };
    if g.edge_count() == 0 {
        return ScanRecord::error(line, text, "graph has no edges".into());
    }
    let (s, _) = match solve(pool, &g, IndexKind::Sum, &SolveOptions::default(), limits) {
        Ok(r) => r,
        Err(e) => return ScanRecord::error(line, text, e.to_string()),
    };
    let hints = BoundHints { sum_value: s.value.exact(), sum_witness: Some(s.labeling.clone()), diff_witness: None };
    let opts = SolveOptions { hints, ..SolveOptions::default() };
    let (d, _) = match solve(pool, &g, IndexKind::Diff, &opts, limits) {
        Ok(r) => r,
        Err(e) => return ScanRecord::error(line, text, e.to_string()),
    };
    let (holds, equal) = compare(s.value, d.value);
    let category = match (holds, equal) {
        (Some(false), _) => Category::Violation,
        (_, Some(true)) => Category::Equality,
        (Some(true), Some(false)) => Category::Strict,
        _ => Category::Unknown,
    };
    ScanRecord {
        line,
        graph6: text.to_string(),
        n: Some(g.n()),
        s: Some(s.value),
        d: Some(d.value),
        half_s: s.value.exact().map(half),
        bounds_hold: holds,
        equality_holds: equal,
        budget_exhausted: s.exhausted || d.exhausted,
        category,
        error: None,
    }
}

/// Scans every non-blank line not starting with `#`, in parallel, and
/// returns the records in input order.
pub fn scan(pool: &ThreadPool, input: &str, limits: Limits) -> Vec<ScanRecord> {
    let lines: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    pool.install(|| lines.par_iter().map(|&(i, l)| scan_line(pool, i, l, limits)).collect())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub graphs: usize,
    pub equality: usize,
    pub strict: usize,
    pub violations: usize,
    pub unknown: usize,
    pub errors: usize,
    /// graph6 strings of the strict and violating graphs.
    pub strict_graphs: Vec<String>,
    pub violating_graphs: Vec<String>,
}

impl ScanSummary {
    pub fn of(records: &[ScanRecord]) -> Self {
        let mut s = ScanSummary { graphs: records.len(), ..Default::default() };
        for r in records {
            match r.category {
                Category::Equality => s.equality += 1,
                Category::Strict => {
                    s.strict += 1;
                    s.strict_graphs.push(r.graph6.clone());
                }
                Category::Violation => {
                    s.violations += 1;
                    s.violating_graphs.push(r.graph6.clone());
                }
                Category::Unknown => s.unknown += 1,
                Category::Error => s.errors += 1,
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({ "summary": {
            "graphs": self.graphs,
            "equality": self.equality,
            "strict_inequality": self.strict,
            "violations": self.violations,
            "unknown": self.unknown,
            "errors": self.errors,
            "strict_graphs": self.strict_graphs,
            "violating_graphs": self.violating_graphs,
        }})
    }
}
