//! Diameter graphs: edges join the pairs of points realizing the diameter.

mod audit;
mod cliques;
mod generate;

pub use audit::{schur_audit, shared_vertex_check, AuditReport, SharedVertexReport};
pub use cliques::{brute_force_cliques, count_cliques, Adjacency, CliqueReport, BRUTE_FORCE_LIMIT};
pub use generate::{random_diameter_config, GeneratorOptions};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{diameter, PointConfig, Space};
use crate::linalg;
use crate::tolerance::Tolerance;

#[derive(Clone, Debug)]
pub struct DiameterGraph {
    config: PointConfig,
    adjacency: Adjacency,
    tol: Tolerance,
    scale: f64,
    edge_slack: EdgeSlack,
}

/// How far the graph is from the edge threshold `1 - eq_tol` on both sides.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EdgeSlack {
    /// Smallest `dist - (1 - eq_tol)` over edges; near zero flags edges that
    /// exist only because of the tolerance.
    pub min_edge_slack: Option<f64>,
    /// Largest `1 - dist` over edges.
    pub max_edge_defect: Option<f64>,
    /// Smallest `(1 - eq_tol) - dist` over non-edges.
    pub min_non_edge_gap: Option<f64>,
}

impl DiameterGraph {
    /// Normalizes `config` to diameter 1 and joins the pairs at distance at
    /// least `1 - eq_tol`.
    ///
    /// Spherical configurations are scaled as a whole (coordinates and
    /// sphere radius together), which keeps them on a sphere exactly.
    pub fn build(config: &PointConfig, tol: Tolerance) -> Result<Self> {
        if config.len() < 2 {
            return Err(Error::Argument("a diameter graph needs at least 2 points".into()));
        }
        let diam = diameter(config)?;
        if !(diam > 0.0) || !diam.is_finite() {
            return Err(Error::Degenerate("all points coincide".into()));
        }
        let config = config.scaled(1.0 / diam)?;
        let pts = config.points();
        let n = pts.len();
        let threshold = 1.0 - tol.eq_tol;
        let mut adjacency = Adjacency::empty(n);
        let mut slack = EdgeSlack {
            min_edge_slack: None,
            max_edge_defect: None,
            min_non_edge_gap: None,
        };
        for i in 0..n {
            for j in i + 1..n {
                let dist = linalg::distance(&pts[i], &pts[j]);
                if dist >= threshold {
                    adjacency.add_edge(i, j);
                    min_opt(&mut slack.min_edge_slack, dist - threshold);
                    max_opt(&mut slack.max_edge_defect, 1.0 - dist);
                } else {
                    min_opt(&mut slack.min_non_edge_gap, threshold - dist);
                }
            }
        }
        Ok(Self {
            config,
            adjacency,
            tol,
            scale: 1.0 / diam,
            edge_slack: slack,
        })
    }

    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// Factor applied to the input to reach diameter 1.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn edge_slack(&self) -> EdgeSlack {
        self.edge_slack
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.len() == 0
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.edge_count()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency.has_edge(i, j)
    }

    /// Intrinsic dimension of the ambient space.
    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    /// Sphere radius after normalization, if spherical.
    pub fn sphere_radius(&self) -> Option<f64> {
        match self.config.space() {
            Space::Sphere { radius, .. } => Some(radius),
            Space::Euclidean { .. } => None,
        }
    }
}

fn min_opt(slot: &mut Option<f64>, v: f64) {
    *slot = Some(slot.map_or(v, |s| s.min(v)));
}

fn max_opt(slot: &mut Option<f64>, v: f64) {
    *slot = Some(slot.map_or(v, |s| s.max(v)));
}
