//! Depth-first enumeration of the preimage tree `f^{-n}(w)`, `n = 0..=N`.
//!
//! Nodes are streamed to a visitor and never materialized as a whole. The
//! parallel fold splits the tree at a fixed depth that depends only on the
//! degree, hands each subtree to a rayon worker and combines the partial
//! results with [`pairwise_reduce`] in subtree order, so the result is
//! bit-identical for every worker count.


use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::map::{polar_root, root_modulus, UnicriticalMap};
use crate::sum::pairwise_reduce;

/// Default cap on `d^N`.
pub const DEFAULT_NODE_BUDGET: u64 = 1 << 24;

/// A node is a critical collision when its image lies within this distance
/// of the critical value, relative to `max(1, |c|)`.
pub const COLLISION_TOLERANCE: f64 = 1e-12;

/// Minimum number of subtrees handed to the parallel fold.
const MIN_PARALLEL_SUBTREES: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeConfig {
    pub node_budget: u64,
    pub collision_tolerance: f64,
}

impl Default for TreeConfig {
    fn default() -> Self {
        Self { node_budget: DEFAULT_NODE_BUDGET, collision_tolerance: COLLISION_TOLERANCE }
    }
}

impl TreeConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        Self { node_budget, ..Self::default() }
    }

    /// Fails when `d^depth` exceeds the node budget.
    pub fn check_budget(&self, degree: u32, depth: usize) -> Result<()> {
        let leaves = u32::try_from(depth)
            .ok()
            .and_then(|n| u64::from(degree).checked_pow(n));
        match leaves {
            Some(count) if count <= self.node_budget => Ok(()),
            _ => Err(Error::Budget { degree, depth, budget: self.node_budget }),
        }
    }
}

/// A point of `f^{-n}(w)`.
#[derive(Debug, Clone, Copy)]
pub struct PreimageNode<'a> {
    pub point: Complex64,
    pub depth: usize,
    /// `log|Df^n(point)|`; `0` at the root.
    pub log_abs_deriv: f64,
    /// Branch indices, root first: `branches[0]` is the choice made at depth 1.
    pub branches: &'a [u8],
}

impl PreimageNode<'_> {
    /// Branch choices, most recent first.
    pub fn root_path(&self) -> impl Iterator<Item = u8> + '_ {
        self.branches.iter().rev().copied()
    }

    /// `|Df^n(point)|^{-t}`, computed in log space.
    pub fn weight(&self, t: f64) -> f64 {
        (-t * self.log_abs_deriv).exp()
    }
}

/// Whether the traversal should expand a node's children.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visit {
    Descend,
    Prune,
}

/// Counts gathered during a traversal.
#[derive(Debug, Clone, PartialEq)]
pub struct TraversalSummary {
    pub nodes: u64,
    /// Node count per depth `0..=N`.
    pub per_depth: Vec<u64>,
    pub max_abs: f64,
    pub min_abs: f64,
}

impl TraversalSummary {
    fn new(depth: usize) -> Self {
        Self {
            nodes: 0,
            per_depth: vec![0; depth + 1],
            max_abs: f64::NEG_INFINITY,
            min_abs: f64::INFINITY,
        }
    }

    #[inline]
    fn record(&mut self, depth: usize, abs: f64) {
        self.nodes += 1;
        self.per_depth[depth] += 1;
        self.max_abs = self.max_abs.max(abs);
        self.min_abs = self.min_abs.min(abs);
    }

    fn merge(mut self, other: Self) -> Self {
        self.nodes += other.nodes;
        for (a, b) in self.per_depth.iter_mut().zip(other.per_depth) {
            *a += b;
        }
        self.max_abs = self.max_abs.max(other.max_abs);
        self.min_abs = self.min_abs.min(other.min_abs);
        self
    }
}

struct Walker<'m> {
    map: &'m UnicriticalMap,
    max_depth: usize,
    tolerance: f64,
    ln_d: f64,
}

impl Walker<'_> {
    /// Expands `z` into its children, or reports a collision with `0`.
    #[inline]
    fn children(&self, z: Complex64, depth: usize) -> Result<(f64, f64, f64)> {
        let c = self.map.parameter();
        let a = z - c;
        let d = self.map.degree();
        let rho = root_modulus(a.norm(), d);
        let theta = a.arg();
        if a.norm() <= self.tolerance * c.norm().max(1.0) {
            return Err(Error::CriticalCollision {
                depth: depth + 1,
                point: Complex64::from_polar(rho, theta / f64::from(d)),
            });
        }
        // every child has modulus rho, so they share log|Df(child)|
        let step = self.ln_d + f64::from(d - 1) * rho.ln();
        Ok((rho, theta, step))
    }

    fn dfs<F>(
        &self,
        z: Complex64,
        depth: usize,
        log: f64,
        path: &mut Vec<u8>,
        summary: &mut TraversalSummary,
        visit: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&PreimageNode) -> Visit,
    {
        summary.record(depth, z.norm());
        let node = PreimageNode { point: z, depth, log_abs_deriv: log, branches: path };
        if visit(&node) == Visit::Prune || depth == self.max_depth {
            return Ok(());
        }
        let (rho, theta, step) = self.children(z, depth)?;
        let d = self.map.degree();
        for k in 0..d {
            let child = polar_root(rho, theta, d, k);
            path.push(k as u8);
            self.dfs(child, depth + 1, log + step, path, summary, visit)?;
            path.pop();
        }
        Ok(())
    }

    /// Visits depths `< split` and returns the depth-`split` nodes unvisited.
    fn frontier<F>(
        &self,
        w: Complex64,
        split: usize,
        summary: &mut TraversalSummary,
        visit: &mut F,
    ) -> Result<Vec<Frontier>>
    where
        F: FnMut(&PreimageNode) -> Visit,
    {
        let mut level = vec![Frontier { point: w, log: 0.0, path: Vec::new() }];
        let d = self.map.degree();
        for depth in 0..split {
            let mut next = Vec::with_capacity(level.len() * d as usize);
            for node in level {
                summary.record(depth, node.point.norm());
                let view = PreimageNode {
                    point: node.point,
                    depth,
                    log_abs_deriv: node.log,
                    branches: &node.path,
                };
                if visit(&view) == Visit::Prune {
                    continue;
                }
                let (rho, theta, step) = self.children(node.point, depth)?;
                for k in 0..d {
                    let mut path = node.path.clone();
                    path.push(k as u8);
                    next.push(Frontier {
                        point: polar_root(rho, theta, d, k),
                        log: node.log + step,
                        path,
                    });
                }
            }
            level = next;
        }
        Ok(level)
    }
}

struct Frontier {
    point: Complex64,
    log: f64,
    path: Vec<u8>,
}

/// Visits every node of the depth-`depth` preimage tree of `w` exactly once,
/// depth first, in branch order.
///
/// Fails with [`Error::Budget`] when `d^depth` exceeds the budget and with
/// [`Error::CriticalCollision`] when a node at depth `1..=depth` lands on the
/// critical point (its derivative factor, and every deeper one, vanishes).
pub fn enumerate_preimage_tree<F>(
    map: &UnicriticalMap,
    w: Complex64,
    depth: usize,
    config: &TreeConfig,
    mut visit: F,
) -> Result<TraversalSummary>
where
    F: FnMut(&PreimageNode) -> Visit,
{
    config.check_budget(map.degree(), depth)?;
    let walker = Walker {
        map,
        max_depth: depth,
        tolerance: config.collision_tolerance,
        ln_d: map.ln_degree(),
    };
    let mut summary = TraversalSummary::new(depth);
    let mut path = Vec::with_capacity(depth);
    walker.dfs(w, 0, 0.0, &mut path, &mut summary, &mut visit)?;
    Ok(summary)
}

/// Depth at which the parallel fold splits the tree for degree `d`.
pub fn split_depth(degree: u32, depth: usize) -> usize {
    let mut s = 0;
    let mut count = 1u64;
    while count < MIN_PARALLEL_SUBTREES {
        count *= u64::from(degree);
        s += 1;
    }
    s.min(depth)
}

/// Folds the preimage tree into an accumulator in parallel.
///
/// Each subtree below [`split_depth`] is folded from `init()` on its own, and
/// the partial accumulators are combined with `merge` in a fixed pairwise
/// order. The outcome does not depend on the size of the rayon pool.
pub fn fold_preimage_tree<A, I, V, M>(
    map: &UnicriticalMap,
    w: Complex64,
    depth: usize,
    config: &TreeConfig,
    init: I,
    visit: V,
    merge: M,
) -> Result<(A, TraversalSummary)>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &PreimageNode) -> Visit + Sync,
    M: Fn(A, A) -> A + Sync,
{
    config.check_budget(map.degree(), depth)?;
    let walker = Walker {
        map,
        max_depth: depth,
        tolerance: config.collision_tolerance,
        ln_d: map.ln_degree(),
    };
    let split = split_depth(map.degree(), depth);

    let mut prefix_acc = init();
    let mut prefix_summary = TraversalSummary::new(depth);
    let frontier = walker.frontier(w, split, &mut prefix_summary, &mut |node: &PreimageNode| {
        visit(&mut prefix_acc, node)
    })?;

    let parts: Vec<(A, TraversalSummary)> = frontier
        .into_par_iter()
        .map(|f| {
            let mut acc = init();
            let mut summary = TraversalSummary::new(depth);
            let mut path = f.path;
            walker.dfs(f.point, split, f.log, &mut path, &mut summary, &mut |node: &PreimageNode| {
                visit(&mut acc, node)
            })?;
            Ok((acc, summary))
        })
        .collect::<Result<_>>()?;

    let mut all = Vec::with_capacity(parts.len() + 1);
    all.push((prefix_acc, prefix_summary));
    all.extend(parts);
    let combined = pairwise_reduce(all, &|(a, sa): (A, TraversalSummary), (b, sb)| {
        (merge(a, b), sa.merge(sb))
    })
    .expect("at least the prefix part");
    Ok(combined)
}
