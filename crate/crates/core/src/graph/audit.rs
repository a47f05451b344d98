use serde::Serialize;

use super::{count_cliques, DiameterGraph, EdgeSlack};
use crate::error::{Error, Result};
use crate::geom::{PointConfig, Space};
use crate::tolerance::Tolerance;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub space: &'static str,
    pub d: usize,
    pub n: usize,
    pub edges: usize,
    /// Number of `d`-cliques.
    pub cliques: usize,
    pub bound: usize,
    pub count_violation: bool,
    /// Smallest intersection over pairs of `d`-cliques.
    pub min_pairwise_intersection: Option<usize>,
    pub expected_min_intersection: usize,
    pub intersection_violation: bool,
    /// Whether the bounds are asserted (spheres need radius above `1/sqrt 2`
    /// after normalization).
    pub in_scope: bool,
    pub sphere_radius: Option<f64>,
    pub edge_slack: EdgeSlack,
    pub clique_list: Vec<Vec<usize>>,
    pub warnings: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        !self.in_scope || (!self.count_violation && !self.intersection_violation)
    }
}

/// Counts the `d`-cliques of the diameter graph of `config` against the
/// bound `n`, and checks that any two of them share at least `d - 2`
/// vertices.
///
/// `d` defaults to the intrinsic dimension of the configuration; a larger
/// value audits the configuration as embedded in a higher-dimensional space.
pub fn schur_audit(config: &PointConfig, d: Option<usize>, tol: Tolerance) -> Result<AuditReport> {
    let own = config.dim();
    let d = d.unwrap_or(own);
    let spherical = matches!(config.space(), Space::Sphere { .. });
    if d < 2 {
        return Err(Error::Argument(format!("audit dimension must be at least 2, got {d}")));
    }
    if d < own || (spherical && d != own) {
        return Err(Error::Dimension(format!(
            "cannot audit a configuration of dimension {own} as dimension {d}"
        )));
    }
    let g = DiameterGraph::build(config, tol)?;
    let n = g.len();
    let mut warnings = Vec::new();
    let radius = g.sphere_radius();
    let in_scope = match radius {
        Some(r) if r <= std::f64::consts::FRAC_1_SQRT_2 => {
            warnings.push(format!(
                "sphere radius {r} after normalization is at most 1/sqrt(2); bounds not asserted"
            ));
            false
        }
        _ => true,
    };
    let report = if d <= n {
        count_cliques(&g, d)?
    } else {
        super::CliqueReport {
            l: d,
            count: 0,
            cliques: Vec::new(),
            pairwise_shared: None,
        }
    };
    let slack = g.edge_slack();
    if let Some(s) = slack.min_edge_slack {
        if s < 0.1 * tol.eq_tol {
            warnings.push(format!("edge within {s:.3e} of the tolerance threshold"));
        }
    }
    let expected = d - 2;
    let count_violation = report.count > n;
    let intersection_violation = report.pairwise_shared.is_some_and(|m| m < expected);
    if in_scope && count_violation {
        warnings.push(format!(
            "{} {d}-cliques on {n} points: check for tolerance artifacts (minimal edge slack {:?})",
            report.count, slack.min_edge_slack
        ));
    }
    Ok(AuditReport {
        space: if spherical { "sphere" } else { "euclidean" },
        d,
        n,
        edges: g.edge_count(),
        cliques: report.count,
        bound: n,
        count_violation,
        min_pairwise_intersection: report.pairwise_shared,
        expected_min_intersection: expected,
        intersection_violation,
        in_scope,
        sphere_radius: radius,
        edge_slack: slack,
        clique_list: report.cliques,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharedVertexReport {
    pub d: usize,
    pub cliques: usize,
    pub pairs: usize,
    pub min_intersection: Option<usize>,
    /// Every pair of `d`-cliques shares a vertex.
    pub shares_vertex: bool,
    /// Every pair shares at least `d - 2` vertices.
    pub meets_d_minus_2: bool,
    pub vacuous: bool,
}

impl SharedVertexReport {
    pub fn passed(&self) -> bool {
        self.shares_vertex
    }
}

/// Any two `d`-cliques of a diameter graph in R^d, d >= 3, share a vertex.
pub fn shared_vertex_check(g: &DiameterGraph, d: usize) -> Result<SharedVertexReport> {
    if d < 3 {
        return Err(Error::Argument(format!("shared-vertex check needs d >= 3, got {d}")));
    }
    let cliques = if d <= g.len() { g.adjacency().cliques(d) } else { Vec::new() };
    let k = cliques.len();
    let mut min: Option<usize> = None;
    for a in 0..k {
        for b in a + 1..k {
            let s = cliques[a].iter().filter(|x| cliques[b].contains(x)).count();
            min = Some(min.map_or(s, |m| m.min(s)));
        }
    }
    Ok(SharedVertexReport {
        d,
        cliques: k,
        pairs: k * k.saturating_sub(1) / 2,
        min_intersection: min,
        shares_vertex: min.map_or(true, |m| m >= 1),
        meets_d_minus_2: min.map_or(true, |m| m >= d - 2),
        vacuous: k < 2,
    })
}
