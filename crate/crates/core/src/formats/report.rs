//! Rendering of audit reports.
//!
//! Machine output is line oriented and stable: one `AUDIT` header, one
//! `VERDICT` line per postulate in the order audited, and a `SUMMARY`
//! trailer. Values containing spaces are double quoted.

use std::fmt::Write;

use crate::acts::act_utility;
use crate::auditor::{AuditReport, Certificate, Verdict};
use crate::pref::{expected_utility, Lottery};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputMode {
    #[default]
    Human,
    Machine,
}

fn eu(report: &AuditReport, l: &Lottery) -> String {
    expected_utility(l, &report.utilities)
        .map(|v| v.to_string())
        .unwrap_or_else(|e| format!("<{e}>"))
}

fn kind(c: &Certificate) -> &'static str {
    match c {
        Certificate::Asymmetry { .. } => "asymmetry",
        Certificate::NegativeTransitivity { .. } => "negative-transitivity",
        Certificate::Independence { .. } => "independence",
        Certificate::NoWitness { .. } => "no-witness",
        Certificate::StateIndependence { .. } => "state-independence",
        Certificate::OverridingNonNullState { .. } => "overriding-non-null-state",
    }
}

/// `(key, value)` fields of a certificate, in a fixed order.
fn fields(report: &AuditReport, c: &Certificate) -> Vec<(&'static str, String)> {
    let lot = |k: &'static str, l: &Lottery, out: &mut Vec<(&'static str, String)>| {
        out.push((k, l.to_string()));
    };
    let mut out = Vec::new();
    match c {
        Certificate::Asymmetry { p, q } => {
            lot("p", p, &mut out);
            lot("q", q, &mut out);
            out.push(("eu-p", eu(report, p)));
            out.push(("eu-q", eu(report, q)));
        }
        Certificate::NegativeTransitivity { p, q, r } => {
            lot("p", p, &mut out);
            lot("q", q, &mut out);
            lot("r", r, &mut out);
            out.push(("eu-p", eu(report, p)));
            out.push(("eu-q", eu(report, q)));
            out.push(("eu-r", eu(report, r)));
        }
        Certificate::Independence {
            p,
            q,
            r,
            lambda,
            observed,
            ..
        } => {
            lot("p", p, &mut out);
            lot("q", q, &mut out);
            lot("r", r, &mut out);
            out.push(("lambda", lambda.to_string()));
            out.push(("eu-p", eu(report, p)));
            out.push(("eu-q", eu(report, q)));
            out.push(("eu-r", eu(report, r)));
            out.push(("observed", observed.name().to_string()));
        }
        Certificate::NoWitness {
            p, q, r, wanted, ..
        } => {
            lot("p", p, &mut out);
            lot("q", q, &mut out);
            lot("r", r, &mut out);
            out.push(("eu-p", eu(report, p)));
            out.push(("eu-q", eu(report, q)));
            out.push(("eu-r", eu(report, r)));
            let w = match wanted {
                crate::nsreal::QOrdering::Greater => "greater",
                crate::nsreal::QOrdering::Equivalent => "equivalent",
                crate::nsreal::QOrdering::Less => "less",
            };
            out.push(("wanted", w.to_string()));
        }
        Certificate::StateIndependence { a, b, state } => {
            out.push(("a", a.to_string()));
            out.push(("b", b.to_string()));
            out.push(("state", state.clone()));
            if let Some(m) = &report.act_model {
                for (k, act) in [("seu-a", a), ("seu-b", b)] {
                    let v = act_utility(act, m)
                        .map(|v| v.to_string())
                        .unwrap_or_else(|e| format!("<{e}>"));
                    out.push((k, v));
                }
            }
        }
        Certificate::OverridingNonNullState { act, state } => {
            out.push(("act", act.to_string()));
            out.push(("state", state.clone()));
            if let Some(m) = &report.act_model {
                let v = act_utility(act, m)
                    .map(|v| v.to_string())
                    .unwrap_or_else(|e| format!("<{e}>"));
                out.push(("seu", v));
            }
        }
    }
    out
}

fn quote(v: &str) -> String {
    if v.is_empty() || v.contains([' ', '"', '=']) {
        format!("\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\""))
    } else {
        v.to_string()
    }
}

pub fn render_report(report: &AuditReport, mode: OutputMode) -> String {
    match mode {
        OutputMode::Human => render_human(report),
        OutputMode::Machine => render_machine(report),
    }
}

fn render_machine(report: &AuditReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "AUDIT regime={} grid={} depth={} closure={} distinct={}",
        report.regime, report.grid, report.depth, report.closure_size, report.distinct_values
    );
    for (p, v) in &report.entries {
        match v {
            Verdict::Holds { checked, witness } => {
                let _ = write!(s, "VERDICT {} HOLD checked={checked}", p.name());
                if let Some(w) = witness {
                    let _ = write!(
                        s,
                        " p={} q={} r={} weights={} chosen={}",
                        quote(&w.p.to_string()),
                        quote(&w.q.to_string()),
                        quote(&w.r.to_string()),
                        quote(&w.weights.to_string()),
                        quote(&w.chosen.to_string())
                    );
                }
                s.push('\n');
            }
            Verdict::Fails(c) => {
                let _ = write!(s, "VERDICT {} FAIL kind={}", p.name(), kind(c));
                for (k, v) in fields(report, c) {
                    let _ = write!(s, " {k}={}", quote(&v));
                }
                s.push('\n');
            }
        }
    }
    let failed = report.entries.iter().filter(|(_, v)| !v.holds()).count();
    let _ = writeln!(
        s,
        "SUMMARY hold={} fail={failed}",
        report.entries.len() - failed
    );
    s
}

fn render_human(report: &AuditReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "regime {}, weights k/{}, closure depth {}: {} lotteries, {} distinct values",
        report.regime, report.grid, report.depth, report.closure_size, report.distinct_values
    );
    let width = report
        .entries
        .iter()
        .map(|(p, _)| p.name().len())
        .max()
        .unwrap_or(0);
    for (p, v) in &report.entries {
        match v {
            Verdict::Holds { checked, witness } => {
                let _ = writeln!(s, "  {:width$}  holds ({checked} instances)", p.name());
                if let Some(w) = witness {
                    let _ = writeln!(
                        s,
                        "  {:width$}    weights {} for p = {}, q = {}, r = {}; chose {}",
                        "", w.weights, w.p, w.q, w.r, w.chosen
                    );
                }
            }
            Verdict::Fails(c) => {
                let _ = writeln!(s, "  {:width$}  FAILS ({})", p.name(), kind(c));
                for (k, v) in fields(report, c) {
                    let _ = writeln!(s, "  {:width$}    {k:8} {v}", "");
                }
            }
        }
    }
    let failed = report.entries.iter().filter(|(_, v)| !v.holds()).count();
    if failed == 0 {
        s.push_str("all postulates hold\n");
    } else {
        let _ = writeln!(s, "{failed} of {} postulates fail", report.entries.len());
    }
    s
}
