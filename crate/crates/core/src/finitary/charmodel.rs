//! Layered n-characteristic models for PM2 (two layers) and PM3 (three).
//!
//! Layer 1 holds one reflexive point per valuation. A point of layer `l+1`
//! is an antichain of earlier points that contains a layer-`l` point,
//! paired with a valuation; it sees itself and everything its antichain
//! members see. A point over a single antichain member with that member's
//! own valuation would duplicate it and is left out.
//!
//! With three layers only antichains whose cone has a single maximal point
//! are used, so that every rooted submodel is shaped like a `U` frame.

use crate::formula::Formula;
use crate::kripke::{eval, Frame, FrameModel, World};
use crate::worldset::WorldSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharCluster {
    pub id: usize,
    pub layer: usize,
    /// Bit `i` set when the `i`-th variable is true here.
    pub valuation: u64,
    /// The co-covered antichain, by cluster id.
    pub antichain: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CharModel {
    vars: Vec<String>,
    layers: usize,
    clusters: Vec<CharCluster>,
    cones: Vec<WorldSet>,
    frame: Frame,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharModelError {
    Layers(usize),
    TooManyVariables {
        n: usize,
        layers: usize,
        limit: usize,
    },
    UnknownCluster(usize),
    /// A formula mentions more variables than the model has.
    FormulaVariables {
        needed: usize,
        available: usize,
    },
}

impl fmt::Display for CharModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharModelError::Layers(l) => write!(f, "layers must be 1, 2 or 3, got {l}"),
            CharModelError::TooManyVariables { n, layers, limit } => write!(
                f,
                "n = {n} exceeds the limit of {limit} variables for {layers} layers"
            ),
            CharModelError::UnknownCluster(c) => write!(f, "no cluster with id {c}"),
            CharModelError::FormulaVariables { needed, available } => write!(
                f,
                "formula has {needed} variables but the model only {available}"
            ),
        }
    }
}

impl core::error::Error for CharModelError {}

/// Largest `n` built by default for the given number of layers.
pub fn default_max_vars(layers: usize) -> usize {
    match layers {
        1 => 10,
        2 => 3,
        _ => 2,
    }
}

pub fn build_char_model(n: usize, layers: usize) -> Result<CharModel, CharModelError> {
    build_char_model_with(n, layers, default_max_vars(layers))
}

pub fn build_char_model_with(
    n: usize,
    layers: usize,
    max_n: usize,
) -> Result<CharModel, CharModelError> {
    if !(1..=3).contains(&layers) {
        return Err(CharModelError::Layers(layers));
    }
    if n > max_n || n >= 16 {
        return Err(CharModelError::TooManyVariables {
            n,
            layers,
            limit: max_n.min(15),
        });
    }
    let single_top = layers == 3;
    let codes = 1u64 << n;
    let mut clusters: Vec<CharCluster> = (0..codes)
        .map(|v| CharCluster {
            id: v as usize,
            layer: 1,
            valuation: v,
            antichain: Vec::new(),
        })
        .collect();
    // Cones over cluster ids; sized generously and trimmed at the end.
    let mut cones: Vec<Vec<usize>> = (0..codes as usize).map(|c| alloc::vec![c]).collect();

    for l in 1..layers {
        let existing = clusters.len();
        let mut found = Vec::new();
        let mut current = Vec::new();
        antichains(
            &clusters,
            &cones,
            0,
            &mut current,
            &mut found,
            l,
            single_top,
        );
        for antichain in found {
            let mut cone: Vec<usize> = antichain
                .iter()
                .flat_map(|&a| cones[a].iter().copied())
                .collect();
            cone.sort_unstable();
            cone.dedup();
            for v in 0..codes {
                if antichain.len() == 1 && clusters[antichain[0]].valuation == v {
                    continue;
                }
                let id = clusters.len();
                let mut own = cone.clone();
                own.push(id);
                cones.push(own);
                clusters.push(CharCluster {
                    id,
                    layer: l + 1,
                    valuation: v,
                    antichain: antichain.clone(),
                });
            }
        }
        debug_assert!(clusters.len() >= existing);
    }

    let size = clusters.len();
    let frame = Frame::from_fn(size, |x, y| cones[x].contains(&y)).expect("cones are transitive");
    let cones = cones
        .into_iter()
        .map(|c| WorldSet::from_worlds(size, c))
        .collect();
    Ok(CharModel {
        vars: (1..=n).map(|i| format!("p{i}")).collect(),
        layers,
        clusters,
        cones,
        frame,
    })
}

/// Antichains among `clusters` (ids in increasing order) containing at
/// least one layer-`l` cluster; with `single_top`, only those whose cone
/// has exactly one layer-1 point.
fn antichains(
    clusters: &[CharCluster],
    cones: &[Vec<usize>],
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    l: usize,
    single_top: bool,
) {
    let fits = !current.is_empty()
        && current.iter().any(|&c| clusters[c].layer == l)
        && (!single_top || {
            let mut tops: Vec<usize> = current
                .iter()
                .flat_map(|&c| cones[c].iter().copied())
                .filter(|&t| clusters[t].layer == 1)
                .collect();
            tops.sort_unstable();
            tops.dedup();
            tops.len() == 1
        });
    if fits {
        out.push(current.clone());
    }
    for c in from..clusters.len() {
        if clusters[c].layer > l {
            break;
        }
        let comparable = current
            .iter()
            .any(|&a| cones[a].contains(&c) || cones[c].contains(&a));
        if comparable {
            continue;
        }
        current.push(c);
        antichains(clusters, cones, c + 1, current, out, l, single_top);
        current.pop();
    }
}

impl CharModel {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn clusters(&self) -> &[CharCluster] {
        &self.clusters
    }

    pub fn cluster(&self, id: usize) -> Result<&CharCluster, CharModelError> {
        self.clusters
            .get(id)
            .ok_or(CharModelError::UnknownCluster(id))
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Clusters visible from `id`, itself included.
    pub fn cone(&self, id: usize) -> &WorldSet {
        &self.cones[id]
    }

    /// Names of the variables true at a cluster.
    pub fn true_vars(&self, id: usize) -> Vec<&str> {
        let v = self.clusters[id].valuation;
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| v >> i & 1 == 1)
            .map(|(_, s)| s.as_str())
            .collect()
    }

    /// The model with its own variable names.
    pub fn model(&self) -> FrameModel {
        self.model_with_names(&self.vars)
    }

    /// The model with the `i`-th variable renamed to `names[i]`.
    pub fn model_with_names(&self, names: &[String]) -> FrameModel {
        let mut m = FrameModel::new(self.frame.clone());
        for (i, name) in names.iter().enumerate().take(self.vars.len()) {
            m.assign(
                name.clone(),
                self.clusters
                    .iter()
                    .filter(|c| c.valuation >> i & 1 == 1)
                    .map(|c| c.id),
            )
            .expect("cluster ids are worlds");
        }
        m
    }

    /// Truth set of `phi`, reading its sorted variables as the model's
    /// first variables.
    pub fn truth_set(&self, phi: &Formula) -> Result<WorldSet, CharModelError> {
        let names: Vec<String> = phi.vars().into_iter().collect();
        if names.len() > self.vars.len() {
            return Err(CharModelError::FormulaVariables {
                needed: names.len(),
                available: self.vars.len(),
            });
        }
        let model = self.model_with_names(&names);
        Ok(crate::kripke::truth_set(&model, phi))
    }

    /// Whether `phi` holds at every cluster.
    pub fn validates(&self, phi: &Formula) -> Result<bool, CharModelError> {
        Ok(self.truth_set(phi)?.is_full())
    }

    /// Truth of `phi`, over the model's own variable names, at `id`.
    pub fn holds_at(&self, phi: &Formula, id: World) -> Result<bool, CharModelError> {
        self.cluster(id)?;
        Ok(eval(&self.model(), id, phi).expect("id checked"))
    }
}

/// A formula over the model's variables true exactly at cluster `id`.
///
/// A layer-1 point is pinned by its valuation holding everywhere above it.
/// A deeper point is pinned by its valuation, by seeing each member of its
/// antichain, by seeing no earlier point outside its cone, and by seeing no
/// other point of its own layer.
pub fn cluster_defining_formula(model: &CharModel, id: usize) -> Result<Formula, CharModelError> {
    let layer = model.cluster(id)?.layer;
    let end = model
        .clusters
        .iter()
        .position(|c| c.layer > layer)
        .unwrap_or(model.clusters.len());
    let mut defs = definitions(model, end);
    Ok(defs.swap_remove(id))
}

/// Defining formulas of every cluster, in id order.
pub fn all_cluster_defining_formulas(model: &CharModel) -> Vec<Formula> {
    definitions(model, model.clusters.len())
}

/// Definitions of the first `end` clusters; `end` closes a layer.
fn definitions(model: &CharModel, end: usize) -> Vec<Formula> {
    let mut defs: Vec<Formula> = Vec::with_capacity(end);
    let mut start = 0;
    while start < end {
        let layer = model.clusters[start].layer;
        let stop = model.clusters[start..end]
            .iter()
            .position(|c| c.layer != layer)
            .map_or(end, |k| start + k);
        let pre: Vec<Formula> = model.clusters[start..stop]
            .iter()
            .map(|c| pre_definition(model, c, &defs))
            .collect();
        for (k, c) in model.clusters[start..stop].iter().enumerate() {
            if layer == 1 {
                defs.push(pre[k].clone());
                continue;
            }
            let siblings = pre
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, f)| Formula::not(Formula::diamond(f.clone())));
            defs.push(Formula::conj(
                core::iter::once(pre[k].clone()).chain(siblings),
            ));
            debug_assert_eq!(c.id, defs.len() - 1);
        }
        start = stop;
    }
    defs
}

/// The definition without the same-layer exclusions. It holds at `c` and
/// possibly at deeper points.
fn pre_definition(model: &CharModel, c: &CharCluster, earlier: &[Formula]) -> Formula {
    let literal = Formula::conj(model.vars.iter().enumerate().map(|(i, v)| {
        let x = Formula::var(v.clone());
        if c.valuation >> i & 1 == 1 {
            x
        } else {
            Formula::not(x)
        }
    }));
    if c.layer == 1 {
        return Formula::and(literal.clone(), Formula::boxed(literal));
    }
    let sees = c
        .antichain
        .iter()
        .map(|&a| Formula::diamond(earlier[a].clone()));
    let cone = &model.cones[c.id];
    let avoids = model
        .clusters
        .iter()
        .filter(|d| d.layer < c.layer && !cone.contains(d.id))
        .map(|d| Formula::not(Formula::diamond(earlier[d.id].clone())));
    Formula::conj(core::iter::once(literal).chain(sees).chain(avoids))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn t12_has_six_clusters() {
        let m = build_char_model(1, 2).unwrap();
        assert_eq!(m.clusters().iter().filter(|c| c.layer == 1).count(), 2);
        assert_eq!(m.clusters().iter().filter(|c| c.layer == 2).count(), 4);
    }

    #[test]
    fn sizes() {
        assert_eq!(
            build_char_model(2, 2).unwrap().clusters().len(),
            4 + 15 * 4 - 4
        );
        // Layer 2: one leaf each, 4*4-4; layer 3: nonempty sets of the
        // three layer-2 points over one leaf, times 4 valuations, minus
        // the 12 duplicates.
        assert_eq!(
            build_char_model(2, 3).unwrap().clusters().len(),
            4 + 12 + (4 * 7 * 4 - 12)
        );
        assert_eq!(
            build_char_model(1, 3).unwrap().clusters().len(),
            2 + 2 + (2 * 2 - 2)
        );
    }

    #[test]
    fn limits() {
        assert!(matches!(
            build_char_model(4, 2),
            Err(CharModelError::TooManyVariables { .. })
        ));
        assert_eq!(
            build_char_model(1, 4).unwrap_err(),
            CharModelError::Layers(4)
        );
    }

    #[test]
    fn evaluation() {
        let m = build_char_model(1, 2).unwrap();
        assert!(m.validates(&p("[]x -> x")).unwrap());
        let holds = m.truth_set(&p("[]x | []~x")).unwrap();
        // Every layer-2 point sees both truth values, itself included.
        assert_eq!(holds.iter().collect::<Vec<_>>(), [0, 1]);
    }

    #[test]
    fn defining_formulas_are_exact() {
        for (n, layers) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
            let m = build_char_model(n, layers).unwrap();
            let model = m.model();
            for (id, f) in all_cluster_defining_formulas(&m).iter().enumerate() {
                let truth = crate::kripke::truth_set(&model, f);
                assert_eq!(
                    truth.iter().collect::<Vec<_>>(),
                    [id],
                    "n={n} l={layers} {id}"
                );
            }
        }
        let m = build_char_model(1, 2).unwrap();
        assert_eq!(cluster_defining_formula(&m, 1).unwrap(), p("p1 & []p1"));
    }
}
