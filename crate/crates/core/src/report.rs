//! Deterministic text and JSON renderings of analysis results.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::fitting::FittingReport;
use crate::group::FiniteGroup;
use crate::perm::Perm;

pub const SCHEMA: u32 = 1;

/// Order and generators of a subgroup, as printed in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSummary {
    pub order: u128,
    pub generators: Vec<String>,
}

impl SubgroupSummary {
    pub fn of(g: &FiniteGroup) -> SubgroupSummary {
        let generators = g.generators().iter().filter(|s| !s.is_identity()).map(Perm::to_string).collect();
        SubgroupSummary { order: g.order(), generators }
    }
}

impl std::fmt::Display for SubgroupSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.generators.is_empty() {
            write!(f, "order {} <()>", self.order)
        } else {
            write!(f, "order {} <{}>", self.order, self.generators.join(", "))
        }
    }
}

pub fn fitting_report_json(r: &FittingReport) -> Value {
    let s = |g: &FiniteGroup| serde_json::to_value(SubgroupSummary::of(g)).expect("summaries serialize");
    json!({
        "schema": SCHEMA,
        "group": { "degree": r.group.degree(), "order": r.group.order(), "generators": s(&r.group)["generators"] },
        "fitting": s(&r.fitting),
        "components": r.components.iter().map(s).collect::<Vec<_>>(),
        "layer": s(&r.layer),
        "fstar": s(&r.fstar),
        "center_of_fitting": s(&r.center_of_fitting),
        "centralizer_of_fstar": s(&r.centralizer_of_fstar),
        "centralizer_equals_center": r.centralizer_equals_center(),
    })
}

pub fn fitting_report_text(r: &FittingReport) -> String {
    let s = SubgroupSummary::of;
    let mut out = String::new();
    let _ = writeln!(out, "group            degree {}, {}", r.group.degree(), s(&r.group));
    let _ = writeln!(out, "F(G)             {}", s(&r.fitting));
    if r.components.is_empty() {
        let _ = writeln!(out, "components       none");
    }
    for (i, q) in r.components.iter().enumerate() {
        let _ = writeln!(out, "component {:<6} {}", i + 1, s(q));
    }
    let _ = writeln!(out, "E(G)             {}", s(&r.layer));
    let _ = writeln!(out, "F*(G)            {}", s(&r.fstar));
    let _ = writeln!(out, "Z(F(G))          {}", s(&r.center_of_fitting));
    let _ = writeln!(out, "C_G(F*(G))       {}", s(&r.centralizer_of_fstar));
    let verdict = if r.centralizer_equals_center() { "equal" } else { "DIFFERENT" };
    let _ = writeln!(out, "C_G(F*) = Z(F)   {verdict}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::fitting::generalized_fitting;

    #[test]
    fn sym4_report() {
        let r = generalized_fitting(&FiniteGroup::symmetric(4), &Caps::default()).unwrap();
        let j = fitting_report_json(&r);
        assert_eq!(j["schema"], 1);
        assert_eq!(j["fstar"]["order"], 4);
        assert_eq!(j["centralizer_equals_center"], true);
        let text = fitting_report_text(&r);
        assert!(text.contains("F*(G)            order 4"));
        assert!(text.contains("components       none"));
    }
}
