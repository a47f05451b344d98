use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::DiameterGraph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`brute_force_cliques`].
pub const BRUTE_FORCE_LIMIT: usize = 20;
/// Below this many vertices the root branches run sequentially.
const PARALLEL_MIN_VERTICES: usize = 48;

/// Symmetric adjacency with sorted neighbor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    matrix: Vec<Vec<bool>>,
}

impl Adjacency {
    pub fn empty(n: usize) -> Self {
        Self {
            matrix: vec![vec![false; n]; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut a = Self::empty(n);
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::Argument(format!("invalid edge ({i}, {j}) on {n} vertices")));
            }
            a.add_edge(i, j);
        }
        Ok(a)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.matrix[i][j] = true;
        self.matrix[j][i] = true;
    }

    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.matrix[i][j]
    }

    pub fn edge_count(&self) -> usize {
        self.matrix
            .iter()
            .enumerate()
            .map(|(i, row)| row[i + 1..].iter().filter(|&&b| b).count())
            .sum()
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.matrix
    }

    fn higher_neighbors(&self, v: usize) -> Vec<usize> {
        (v + 1..self.len()).filter(|&u| self.matrix[v][u]).collect()
    }

    fn extend(&self, current: &mut Vec<usize>, candidates: &[usize], l: usize, out: &mut Vec<Vec<usize>>) {
        if current.len() == l {
            out.push(current.clone());
            return;
        }
        for (k, &v) in candidates.iter().enumerate() {
            // not enough candidates left to complete a clique
            if current.len() + candidates.len() - k < l {
                break;
            }
            let next: Vec<usize> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|&u| self.matrix[v][u])
                .collect();
            current.push(v);
            self.extend(current, &next, l, out);
            current.pop();
        }
    }

    fn cliques_from_root(&self, root: usize, l: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = vec![root];
        self.extend(&mut current, &self.higher_neighbors(root), l, &mut out);
        out
    }

    /// All `l`-cliques, each sorted ascending, listed lexicographically.
    pub fn cliques(&self, l: usize) -> Vec<Vec<usize>> {
        let n = self.len();
        if l == 0 || l > n {
            return Vec::new();
        }
        let per_root: Vec<Vec<Vec<usize>>> = if n >= PARALLEL_MIN_VERTICES {
            (0..n).into_par_iter().map(|v| self.cliques_from_root(v, l)).collect()
        } else {
            (0..n).map(|v| self.cliques_from_root(v, l)).collect()
        };
        per_root.into_iter().flatten().collect()
    }

    pub fn count_cliques(&self, l: usize) -> usize {
        self.cliques(l).len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueReport {
    pub l: usize,
    pub count: usize,
    pub cliques: Vec<Vec<usize>>,
    /// Smallest intersection over pairs of listed cliques; `None` with fewer
    /// than two cliques.
    pub pairwise_shared: Option<usize>,
}

impl CliqueReport {
    fn from_cliques(l: usize, cliques: Vec<Vec<usize>>) -> Self {
        let pairwise_shared = cliques
            .iter()
            .tuple_combinations()
            .map(|(a, b)| a.iter().filter(|x| b.contains(x)).count())
            .min();
        Self {
            l,
            count: cliques.len(),
            cliques,
            pairwise_shared,
        }
    }
}

fn check_l(n: usize, l: usize) -> Result<()> {
    if l == 0 || l > n {
        return Err(Error::Argument(format!("clique size must lie in 1..={n}, got {l}")));
    }
    Ok(())
}

/// Exact enumeration of the `l`-cliques by ordered extension with
/// candidate-count pruning.
pub fn count_cliques(g: &DiameterGraph, l: usize) -> Result<CliqueReport> {
    check_l(g.len(), l)?;
    Ok(CliqueReport::from_cliques(l, g.adjacency().cliques(l)))
}

/// Oracle: tests every `l`-subset.
pub fn brute_force_cliques(adjacency: &Adjacency, l: usize) -> Result<CliqueReport> {
    let n = adjacency.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::Refused(format!(
            "brute force over {n} vertices (limit {BRUTE_FORCE_LIMIT})"
        )));
    }
    check_l(n, l)?;
    let cliques = (0..n)
        .combinations(l)
        .filter(|s| s.iter().tuple_combinations().all(|(&a, &b)| adjacency.has_edge(a, b)))
        .collect();
    Ok(CliqueReport::from_cliques(l, cliques))
}
