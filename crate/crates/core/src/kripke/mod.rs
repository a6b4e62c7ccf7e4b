//! Finite reflexive-transitive frames and models.

mod cocover;
mod compiled;
mod families;
mod model;
mod search;

pub use cocover::{has_weak_cocover_closure, is_isomorphic};
pub(crate) use compiled::Node;
pub use compiled::{Compiled, Evaluator};
pub use families::make_frame;
pub use model::{eval, truth_set, FrameModel};
pub(crate) use search::{
    counter_model, refute_on_frame, Refutation, SearchOptions, ValuationCursor,
};
pub use search::{
    valid_on_frame, valid_on_frame_exhaustive, CounterModel, FrameVerdict, SearchLimits,
};

use crate::worldset::WorldSet;
use alloc::vec::Vec;
use core::fmt;

pub type World = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KripkeError {
    UnknownWorld { world: World, size: usize },
    NotReflexive(World),
    NotTransitive { from: World, via: World, to: World },
    SizeParameter(usize),
    EmptyAntichain,
    NotACluster,
    NotAntichain,
    RootInAntichain,
    BudgetExceeded { valuations: u64 },
}

impl fmt::Display for KripkeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KripkeError::UnknownWorld { world, size } => {
                write!(f, "world {world} is not in a frame of {size} worlds")
            }
            KripkeError::NotReflexive(w) => write!(f, "relation is not reflexive at {w}"),
            KripkeError::NotTransitive { from, via, to } => {
                write!(f, "relation is not transitive: {from} -> {via} -> {to}")
            }
            KripkeError::SizeParameter(m) => {
                write!(f, "frame size parameter must be >= 1, got {m}")
            }
            KripkeError::EmptyAntichain => write!(f, "antichain is empty"),
            KripkeError::NotACluster => write!(f, "antichain member is not a cluster of the frame"),
            KripkeError::NotAntichain => write!(f, "clusters are not pairwise incomparable"),
            KripkeError::RootInAntichain => write!(f, "antichain contains the root cluster"),
            KripkeError::BudgetExceeded { valuations } => {
                write!(f, "search budget exceeded after {valuations} valuations")
            }
        }
    }
}

impl core::error::Error for KripkeError {}

/// A finite frame whose relation is reflexive and transitive.
#[derive(Clone, PartialEq, Eq)]
pub struct Frame {
    succ: Vec<WorldSet>,
    pred: Vec<WorldSet>,
}

impl Frame {
    /// Builds a frame from a relation predicate and checks the S4 conditions.
    pub fn from_fn(size: usize, rel: impl Fn(World, World) -> bool) -> Result<Frame, KripkeError> {
        let succ: Vec<WorldSet> = (0..size)
            .map(|x| WorldSet::from_worlds(size, (0..size).filter(|&y| rel(x, y))))
            .collect();
        Self::from_successors(succ)
    }

    /// Builds a frame from `u -> v` pairs; the relation must already be
    /// reflexive and transitive.
    pub fn from_pairs(size: usize, pairs: &[(World, World)]) -> Result<Frame, KripkeError> {
        let mut succ = alloc::vec![WorldSet::empty(size); size];
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= size {
                    return Err(KripkeError::UnknownWorld { world: w, size });
                }
            }
            succ[u].insert(v);
        }
        Self::from_successors(succ)
    }

    /// Reflexive-transitive closure of the given edges.
    pub fn closure_of(size: usize, edges: &[(World, World)]) -> Result<Frame, KripkeError> {
        let mut succ = alloc::vec![WorldSet::empty(size); size];
        for (w, s) in succ.iter_mut().enumerate() {
            s.insert(w);
        }
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= size {
                    return Err(KripkeError::UnknownWorld { world: w, size });
                }
            }
            succ[u].insert(v);
        }
        // Warshall over bit rows.
        for k in 0..size {
            let row_k = succ[k].clone();
            for row in succ.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_successors(succ)
    }

    fn from_successors(succ: Vec<WorldSet>) -> Result<Frame, KripkeError> {
        let size = succ.len();
        for (x, row) in succ.iter().enumerate() {
            if !row.contains(x) {
                return Err(KripkeError::NotReflexive(x));
            }
            for y in row.iter() {
                if !succ[y].is_subset(row) {
                    let to = succ[y].iter().find(|&z| !row.contains(z)).unwrap_or(y);
                    return Err(KripkeError::NotTransitive {
                        from: x,
                        via: y,
                        to,
                    });
                }
            }
        }
        let mut pred = alloc::vec![WorldSet::empty(size); size];
        for (x, row) in succ.iter().enumerate() {
            for y in row.iter() {
                pred[y].insert(x);
            }
        }
        Ok(Frame { succ, pred })
    }

    pub fn size(&self) -> usize {
        self.succ.len()
    }

    pub fn worlds(&self) -> core::ops::Range<World> {
        0..self.size()
    }

    #[inline]
    pub fn related(&self, x: World, y: World) -> bool {
        self.succ[x].contains(y)
    }

    pub fn successors(&self, x: World) -> &WorldSet {
        &self.succ[x]
    }

    pub fn predecessors(&self, x: World) -> &WorldSet {
        &self.pred[x]
    }

    /// All related pairs in ascending order.
    pub fn pairs(&self) -> impl Iterator<Item = (World, World)> + '_ {
        self.worlds()
            .flat_map(move |x| self.succ[x].iter().map(move |y| (x, y)))
    }

    /// The subframe generated by `roots`, with worlds renumbered in
    /// ascending order. Returns the frame and the old ids of its worlds.
    pub fn generated_subframe(&self, roots: &[World]) -> (Frame, Vec<World>) {
        let mut keep = WorldSet::empty(self.size());
        for &r in roots {
            keep.union_with(&self.succ[r]);
        }
        let old: Vec<World> = keep.iter().collect();
        let frame = self.induced(&old);
        (frame, old)
    }

    /// Restriction of the relation to `worlds` (which must be up-closed for
    /// the result to stay transitive; callers pass cones).
    pub(crate) fn induced(&self, worlds: &[World]) -> Frame {
        let n = worlds.len();
        let succ = worlds
            .iter()
            .map(|&x| {
                WorldSet::from_worlds(
                    n,
                    worlds
                        .iter()
                        .enumerate()
                        .filter(|&(_, &y)| self.related(x, y))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        Frame::from_successors(succ).expect("induced subframe of an S4 frame")
    }

    /// Worlds `u != v` such that swapping them is an automorphism, grouped
    /// into classes listed by least member.
    pub fn twin_classes(&self) -> Vec<Vec<World>> {
        let n = self.size();
        let mut class_of: Vec<Option<usize>> = alloc::vec![None; n];
        let mut classes: Vec<Vec<World>> = Vec::new();
        for w in 0..n {
            if class_of[w].is_some() {
                continue;
            }
            let id = classes.len();
            class_of[w] = Some(id);
            let mut members = alloc::vec![w];
            for (v, slot) in class_of.iter_mut().enumerate().skip(w + 1) {
                if slot.is_none() && self.swappable(w, v) {
                    *slot = Some(id);
                    members.push(v);
                }
            }
            classes.push(members);
        }
        classes
    }

    fn swappable(&self, u: World, v: World) -> bool {
        if self.related(u, v) != self.related(v, u) {
            return false;
        }
        let mut su = self.succ[u].clone();
        let mut sv = self.succ[v].clone();
        let mut pu = self.pred[u].clone();
        let mut pv = self.pred[v].clone();
        for s in [&mut su, &mut sv, &mut pu, &mut pv] {
            s.remove(u);
            s.remove(v);
        }
        su == sv && pu == pv
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frame")
            .field("size", &self.size())
            .field("succ", &self.succ)
            .finish()
    }
}

/// A maximal set of mutually related worlds.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cluster {
    members: Vec<World>,
}

impl Cluster {
    pub fn new(mut members: Vec<World>) -> Cluster {
        members.sort_unstable();
        members.dedup();
        Cluster { members }
    }

    pub fn members(&self) -> &[World] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn representative(&self) -> World {
        self.members[0]
    }
}

/// Partition of the worlds into clusters, ordered by least member.
pub fn clusters(frame: &Frame) -> Vec<Cluster> {
    let mut seen = WorldSet::empty(frame.size());
    let mut out = Vec::new();
    for w in frame.worlds() {
        if seen.contains(w) {
            continue;
        }
        let mut cl = frame.successors(w).clone();
        cl.intersect_with(frame.predecessors(w));
        seen.union_with(&cl);
        out.push(Cluster::new(cl.iter().collect()));
    }
    out
}
