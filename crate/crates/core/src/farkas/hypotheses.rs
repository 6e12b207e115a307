use std::collections::BTreeSet;

use super::Inequality;
use crate::certificate::{Mode, MAX_LEVEL, MIN_LEVEL};

/// `c1*|S_lo| + ... + ck*|S_hi|` with `ck = w(k)`, zero weights skipped.
fn s_sum(lo: usize, hi: usize, w: impl Fn(usize) -> i64) -> String {
    let terms: Vec<String> = (lo..=hi)
        .filter(|&j| w(j) != 0)
        .map(|j| format!("{}*|S_{j}|", w(j)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn a_sum(lo: usize, hi: usize, w: impl Fn(usize) -> i64) -> String {
    (lo..=hi)
        .map(|j| format!("{}*|A_{j}|", w(j)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn push(out: &mut Vec<Inequality>, id: impl Into<String>, text: &str) {
    out.push(Inequality::parse(id, text).expect("built-in hypothesis parses"));
}

const WHOLE_GRAPH: &str =
    "e(S,N) + e(N) + e(N,A) + e(N,Z) + e(A) + e(A,Z) + e(Z) = 3|V(G)| + 3g - 6";
const VPART: &str = "|V(G)| = |S| + |N| + |A| + |Z|";

/// The hypotheses available to each derivation. Equalities are returned as
/// single entries; the registry splits them into halves.
pub fn hypotheses(mode: Mode) -> Vec<Inequality> {
    let mut h = Vec::new();
    match mode {
        Mode::Simple => {
            push(&mut h, "ZZZ", "7|Z| <= e(N,Z) + e(A,Z) + 2e(Z)");
            push(&mut h, "AAA", "4|A| <= e(N,A) + e(A,Z) + 2e(A)");
            push(&mut h, "3A", "3|A| <= e(N,A)");
            push(&mut h, "WholeGraph", WHOLE_GRAPH);
            push(&mut h, "Vpart", VPART);
            push(&mut h, "NS", "|N| <= e(S,N)");
            push(&mut h, "NN", "3|N| <= 2e(N)");
            push(&mut h, "N6S", "|N| <= 6|S|");
            push(&mut h, "Sg", "|S| <= g");
        }
        Mode::Full => {
            push(&mut h, "Sg", "|S| <= g");
            push(&mut h, "N", "|N| <= e(S,N)");
            push(&mut h, "eSN", &format!("e(S,N) = {}", s_sum(MIN_LEVEL, MAX_LEVEL, |j| j as i64)));
            for i in MIN_LEVEL + 1..=MAX_LEVEL {
                push(&mut h, format!("Ui.{i}"), &format!("|U_{i}| <= |U_{}| + {i}|S_{i}|", i - 1));
            }
            for i in MIN_LEVEL..=MAX_LEVEL {
                let rhs = s_sum(MIN_LEVEL, i, |j| j as i64 - 1);
                push(&mut h, format!("Components.{i}"), &format!("|U_{i}| <= c_{i} + {rhs}"));
            }
            for i in MIN_LEVEL..=MAX_LEVEL {
                push(&mut h, format!("3Ui.{i}"), &format!("3|U_{i}| <= 2e(U_{i})"));
                push(&mut h, format!("3Vi.{i}"), &format!("3|V_{i}| <= e(U_{i},Y_{i})"));
            }
            push(&mut h, "10Z", "10|Z| <= 2e(Z) + e(N,Z) + e(A,Z)");
            push(
                &mut h,
                "iAi",
                &format!("{} <= 2e(A) + e(N,A) + e(A,Z)", a_sum(MIN_LEVEL, 10, |j| j as i64)),
            );
            for i in MIN_LEVEL..=MAX_LEVEL {
                let lhs = format!("4|V_{i}| + {}|W_{i}| + {}", i + 1, a_sum(MIN_LEVEL, i, |_| 3));
                let s = if i < MAX_LEVEL {
                    format!("{} + ", s_sum(i + 1, MAX_LEVEL, |j| j as i64))
                } else {
                    String::new()
                };
                let rhs = format!("{s}e(U_{i},Y_{i}) + 2e(Y_{i}) + e(N,Z) + e(N,A)");
                push(&mut h, format!("4Vi.{i}"), &format!("{lhs} <= {rhs}"));
            }
            for i in MIN_LEVEL..=MAX_LEVEL {
                let a_half: String = (MIN_LEVEL..=i).map(|k| format!(" + 1/2|A_{k}|")).collect();
                let s_half: String = (MIN_LEVEL + 1..=i).map(|j| format!(" + {}/2*|S_{j}|", j - 4)).collect();
                push(
                    &mut h,
                    format!("Bi.{i}"),
                    &format!("g >= |S| - |U_{i}|{a_half} + 2c_{i}{s_half}"),
                );
            }
            push(&mut h, "3A", "3|A| <= e(N,A)");
            push(&mut h, "WholeGraph", WHOLE_GRAPH);
            for i in MIN_LEVEL..=MAX_LEVEL {
                push(&mut h, format!("eN.{i}"), &format!("e(N) = e(U_{i}) + e(U_{i},Y_{i}) + e(Y_{i})"));
                push(&mut h, format!("Npart.{i}"), &format!("|N| = |U_{i}| + |V_{i}| + |W_{i}|"));
            }
            push(&mut h, "Vpart", VPART);
            push(&mut h, "Apart", &format!("|A| = {}", a_sum(MIN_LEVEL, 10, |_| 1)));
            push(&mut h, "Spart", &format!("|S| = {}", s_sum(MIN_LEVEL, MAX_LEVEL, |_| 1)));
        }
    }
    h
}

/// Every variable name a derivation may mention. The certificate's
/// partition report provides a value for each.
pub fn variable_universe() -> BTreeSet<String> {
    let mut u: BTreeSet<String> = [
        "g", "|V(G)|", "|E(G)|", "|S|", "|N|", "|A|", "|Z|", "e(S,N)", "e(N)", "e(N,A)", "e(N,Z)", "e(A)",
        "e(A,Z)", "e(Z)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for i in MIN_LEVEL..=10 {
        u.insert(format!("|A_{i}|"));
    }
    for i in MIN_LEVEL..=MAX_LEVEL {
        for name in [
            format!("|S_{i}|"),
            format!("|U_{i}|"),
            format!("|Y_{i}|"),
            format!("|V_{i}|"),
            format!("|W_{i}|"),
            format!("c_{i}"),
            format!("e(U_{i})"),
            format!("e(U_{i},Y_{i})"),
            format!("e(Y_{i})"),
            format!("e(U_{i},V_{i})"),
            format!("e(U_{i},A)"),
        ] {
            u.insert(name);
        }
    }
    u
}
