//! One row per Kotzig orbit of connected graphs, with the H(G) invariants.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hgraph::EventGraph;
use crate::orbit::{orbits, OrbitReport};
use crate::parameters::{alpha_by_strategies, MAX_STRATEGY_QUBITS};

/// Largest n classified without the long-running opt-in.
pub const DEFAULT_MAX_CLASSIFY: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub n: usize,
    pub representative: String,
    pub orbit_size: usize,
    pub vertex_count: usize,
    pub components: String,
    pub alpha: usize,
    pub beta_range: String,
    pub degree_sequence: String,
}

impl ClassificationRow {
    pub fn tsv_header() -> &'static str {
        "n\tG\t|G^L|\t|V^H|\tlambda_H\talpha\tbeta_min-beta_max\tD_H"
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.representative,
            self.orbit_size,
            self.vertex_count,
            self.components,
            self.alpha,
            self.beta_range,
            self.degree_sequence
        )
    }

    fn cells(&self) -> [String; 8] {
        [
            self.n.to_string(),
            self.representative.clone(),
            self.orbit_size.to_string(),
            self.vertex_count.to_string(),
            self.components.clone(),
            self.alpha.to_string(),
            self.beta_range.clone(),
            self.degree_sequence.clone(),
        ]
    }
}

fn row_for(orbit: &OrbitReport) -> Result<ClassificationRow> {
    let rep = orbit.representative();
    let h = EventGraph::build(rep)?;
    let (alpha, _) = alpha_by_strategies(h.group())?;
    Ok(ClassificationRow {
        n: rep.n(),
        representative: rep.to_edge_list(),
        orbit_size: orbit.orbit_size,
        vertex_count: h.vertex_count(),
        components: h.components().label(),
        alpha,
        beta_range: orbit.beta_range(),
        degree_sequence: h.degree_sequence(),
    })
}

/// Rows for 2 ≤ n ≤ 6, ordered by representative adjacency code.
pub fn classify(n: usize) -> Result<Vec<ClassificationRow>> {
    classify_with(n, false)
}

/// As [`classify`], allowing n up to the strategy-enumeration limit when
/// `long_running` is set.
pub fn classify_with(n: usize, long_running: bool) -> Result<Vec<ClassificationRow>> {
    if n < 2 {
        return Err(Error::TooSmall { min: 2, got: n });
    }
    let limit = if long_running {
        MAX_STRATEGY_QUBITS
    } else {
        DEFAULT_MAX_CLASSIFY
    };
    if n > limit {
        return Err(Error::Capability {
            what: "classification qubit count",
            got: n,
            limit,
        });
    }
    orbits(n)?.par_iter().map(row_for).collect()
}

pub fn rows_to_tsv(rows: &[ClassificationRow]) -> String {
    let mut out = String::from(ClassificationRow::tsv_header());
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_tsv());
        out.push('\n');
    }
    out
}

pub fn rows_to_json(rows: &[ClassificationRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::Internal(e.to_string()))
}

/// Space-aligned table.
pub fn rows_to_text(rows: &[ClassificationRow]) -> String {
    let header: Vec<String> = ClassificationRow::tsv_header()
        .split('\t')
        .map(String::from)
        .collect();
    let body: Vec<[String; 8]> = rows.iter().map(ClassificationRow::cells).collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for cells in &body {
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&header);
    for cells in &body {
        line(cells);
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitComponents {
    pub representative: String,
    pub star_orbit: bool,
    pub components: String,
    pub component_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub orbits: Vec<OrbitComponents>,
    pub holds: bool,
    /// Representatives whose component count departs from the prediction.
    pub violations: Vec<String>,
}

/// H(G) should be connected unless G is in the star's orbit, where it has
/// three components for n = 2 and two otherwise.
pub fn check_connectedness_conjecture(n: usize) -> Result<ConjectureReport> {
    if n > DEFAULT_MAX_CLASSIFY {
        return Err(Error::Capability {
            what: "conjecture check qubit count",
            got: n,
            limit: DEFAULT_MAX_CLASSIFY,
        });
    }
    if n < 2 {
        return Err(Error::TooSmall { min: 2, got: n });
    }
    let star = Graph::star(n)?;
    let rows: Vec<OrbitComponents> = orbits(n)?
        .par_iter()
        .map(|orbit| {
            let h = EventGraph::build(orbit.representative())?;
            let comps = h.components();
            Ok(OrbitComponents {
                representative: orbit.representative().to_edge_list(),
                star_orbit: orbit.contains(&star)?,
                components: comps.label(),
                component_count: comps.count(),
            })
        })
        .collect::<Result<_>>()?;
    let expected_star = if n == 2 { 3 } else { 2 };
    let violations: Vec<String> = rows
        .iter()
        .filter(|r| r.component_count != if r.star_orbit { expected_star } else { 1 })
        .map(|r| r.representative.clone())
        .collect();
    Ok(ConjectureReport {
        n,
        holds: violations.is_empty(),
        orbits: rows,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_and_three() {
        let rows = classify(2).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].to_tsv(), "2\t12\t1\t6\t3[2,2,2]\t3\t0\t1,6/");
        let rows = classify(3).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(
            (
                r.orbit_size,
                r.vertex_count,
                r.components.as_str(),
                r.alpha,
                r.beta_range.as_str()
            ),
            (2, 22, "2[6,16]", 6, "1-1")
        );
    }

    #[test]
    fn four() {
        let rows = classify(4).unwrap();
        let mut v: Vec<(usize, usize)> = rows.iter().map(|r| (r.vertex_count, r.alpha)).collect();
        v.sort();
        assert_eq!(v, [(76, 13), (84, 13)]);
    }

    #[test]
    fn limits() {
        assert!(classify(1).is_err());
        assert!(matches!(classify(7), Err(Error::Capability { .. })));
    }

    #[test]
    fn conjecture_small() {
        let r = check_connectedness_conjecture(2).unwrap();
        assert!(r.holds);
        assert_eq!(r.orbits[0].component_count, 3);
        let r = check_connectedness_conjecture(4).unwrap();
        assert!(r.holds);
        let split: Vec<&str> = r
            .orbits
            .iter()
            .filter(|o| o.star_orbit)
            .map(|o| o.components.as_str())
            .collect();
        assert_eq!(split, ["2[20,64]"]);
    }

    #[test]
    fn formats() {
        let rows = classify(3).unwrap();
        let tsv = rows_to_tsv(&rows);
        assert_eq!(tsv.lines().count(), 2);
        assert!(rows_to_json(&rows).unwrap().contains("\"alpha\": 6"));
        assert!(rows_to_text(&rows)
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("3  "));
    }
}
