//! Forward iteration and exhaustive backward branching of a PL map.
//!
//! [`backward_branches`] enumerates every finite thread `(x1, ..., xd)` with
//! `h(x_{i+1}) = x_i` that starts at a given root. Output order is
//! lexicographic and independent of the worker count.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_set::IntervalSet;
use crate::inverse_limit::Thread;
use crate::plmap::{compose_within, point_preimage, PlMap};
use crate::rational::UnitRational;

/// `m^n` by repeated composition, failing once any intermediate map has more
/// than `budget` breakpoints.
pub fn iterate(m: &PlMap, n: usize, budget: usize) -> Result<PlMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("iterate needs n >= 1".into()));
    }
    if m.len() > budget {
        return Err(Error::BudgetExceeded {
            count: m.len(),
            budget,
        });
    }
    let mut acc = m.clone();
    for _ in 1..n {
        acc = compose_within(m, &acc, budget)?;
    }
    Ok(acc)
}

/// `(x, m(x), ..., m^n(x))`.
pub fn orbit(m: &PlMap, x: &UnitRational, n: usize) -> Vec<UnitRational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(x.clone());
    for _ in 0..n {
        let next = m.eval(out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchOptions {
    /// Stop after this many complete threads.
    pub max_branches: usize,
    /// Worker threads; 1 runs on the calling thread.
    pub workers: usize,
}

impl Default for BranchOptions {
    fn default() -> Self {
        BranchOptions {
            max_branches: usize::MAX,
            workers: 1,
        }
    }
}

impl BranchOptions {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn with_max_branches(mut self, max_branches: usize) -> Self {
        self.max_branches = max_branches;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

/// A non-degenerate interval of preimages met during enumeration. Only its
/// left endpoint is followed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalBranch {
    /// 1-based index of the coordinate the interval ranges over.
    pub position: usize,
    /// Coordinates `x1, ..., x_{position-1}` leading to it.
    pub prefix: Vec<UnitRational>,
    pub set: IntervalSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchTree {
    pub root: UnitRational,
    pub depth: usize,
    pub branches: Vec<Thread>,
    pub truncated: bool,
    pub interval_branches: Vec<IntervalBranch>,
}

/// Children of a node in ascending order, with the interval components recorded.
fn children(
    h: &PlMap,
    prefix: &[UnitRational],
    intervals: &mut Vec<IntervalBranch>,
) -> Vec<UnitRational> {
    let last = prefix.last().expect("nonempty prefix");
    let pre = point_preimage(h, last);
    pre.iter()
        .map(|iv| {
            if !iv.is_point() {
                intervals.push(IntervalBranch {
                    position: prefix.len() + 1,
                    prefix: prefix.to_vec(),
                    set: IntervalSet::interval(iv.lo.clone(), iv.hi.clone()),
                });
            }
            iv.lo.clone()
        })
        .collect()
}

struct Subtree<'a> {
    h: &'a PlMap,
    bonding: &'a Arc<PlMap>,
    depth: usize,
    limit: usize,
    leaves: Vec<Thread>,
    intervals: Vec<IntervalBranch>,
    overflow: bool,
}

impl Subtree<'_> {
    /// Depth-first walk; returns false once the leaf limit is passed.
    fn walk(&mut self, prefix: &mut Vec<UnitRational>) -> bool {
        if prefix.len() == self.depth {
            if self.leaves.len() == self.limit {
                self.overflow = true;
                return false;
            }
            self.leaves.push(Thread::from_parts_unchecked(
                self.bonding.clone(),
                prefix.clone(),
            ));
            return true;
        }
        for child in children(self.h, prefix, &mut self.intervals) {
            prefix.push(child);
            let go_on = self.walk(prefix);
            prefix.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn enumerate_from(
    h: &Arc<PlMap>,
    prefix: Vec<UnitRational>,
    depth: usize,
    limit: usize,
) -> (Vec<Thread>, Vec<IntervalBranch>, bool) {
    let mut sub = Subtree {
        h,
        bonding: h,
        depth,
        limit,
        leaves: Vec::new(),
        intervals: Vec::new(),
        overflow: false,
    };
    let mut prefix = prefix;
    sub.walk(&mut prefix);
    (sub.leaves, sub.intervals, sub.overflow)
}

/// Enumerates all depth-`depth` threads rooted at `root` under the bonding map `h`.
pub fn backward_branches(
    h: &Arc<PlMap>,
    root: &UnitRational,
    depth: usize,
    opts: BranchOptions,
) -> Result<BranchTree> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    if opts.max_branches == 0 || opts.workers == 0 {
        return Err(Error::InvalidArgument(
            "max_branches and workers must be at least 1".into(),
        ));
    }

    let (mut leaves, mut intervals, overflow) = if opts.workers == 1 {
        enumerate_from(h, vec![root.clone()], depth, opts.max_branches)
    } else {
        parallel_enumerate(h, root, depth, opts)?
    };

    let truncated = overflow || leaves.len() > opts.max_branches;
    leaves.truncate(opts.max_branches);
    // Keep only interval records whose representative branch survived.
    intervals.retain(|ib| {
        let mut key = ib.prefix.clone();
        key.push(ib.set.min().expect("nonempty").clone());
        let idx = leaves.partition_point(|t| t.coords() < key.as_slice());
        leaves
            .get(idx)
            .is_some_and(|t| t.coords().starts_with(&key))
    });
    intervals.sort_by(|a, b| {
        a.prefix
            .cmp(&b.prefix)
            .then_with(|| a.set.min().cmp(&b.set.min()))
    });
    intervals.dedup();

    Ok(BranchTree {
        root: root.clone(),
        depth,
        branches: leaves,
        truncated,
        interval_branches: intervals,
    })
}

fn parallel_enumerate(
    h: &Arc<PlMap>,
    root: &UnitRational,
    depth: usize,
    opts: BranchOptions,
) -> Result<(Vec<Thread>, Vec<IntervalBranch>, bool)> {
    // Expand breadth-first until there is enough independent work.
    let target = opts.workers * 8;
    let mut frontier = vec![vec![root.clone()]];
    let mut intervals = Vec::new();
    while frontier.len() < target && frontier[0].len() < depth {
        let mut next = Vec::new();
        for prefix in &frontier {
            for child in children(h, prefix, &mut intervals) {
                let mut p = prefix.clone();
                p.push(child);
                next.push(p);
            }
        }
        if next.is_empty() {
            return Ok((Vec::new(), intervals, false));
        }
        frontier = next;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let parts: Vec<(Vec<Thread>, Vec<IntervalBranch>, bool)> = pool.install(|| {
        frontier
            .into_par_iter()
            .map(|prefix| enumerate_from(h, prefix, depth, opts.max_branches))
            .collect()
    });

    let mut leaves = Vec::new();
    let mut overflow = false;
    for (part_leaves, part_intervals, part_overflow) in parts {
        if leaves.len() > opts.max_branches {
            overflow = true;
            break;
        }
        leaves.extend(part_leaves);
        intervals.extend(part_intervals);
        overflow |= part_overflow;
    }
    Ok((leaves, intervals, overflow))
}
