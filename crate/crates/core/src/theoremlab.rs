//! Executable statements about `Aut(Cay(Gr(S), S))` for transposition sets:
//! lifting `Aut(T(S))` to the Cayley graph, the per-family prediction table,
//! local 4- and 6-cycle censuses around the identity, the commuting-pair
//! cycle condition, and normality of the right regular representation.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::autsearch::{automorphism_group_with, cayley_automorphism_group, AutConfig, AutError, AutResult};
use crate::cayley::{build_cayley, CayleyError, CayleyGraph};
use crate::perm::Perm;
use crate::permgroup::{is_normal, GroupOrder, PermGroup};
use crate::transposition::{FamilyTag, TranspositionSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("transposition graph is disconnected")]
    DisconnectedTranspositionGraph,
    #[error("lifted map {0} is not a Cayley graph automorphism")]
    LiftVerificationFailed(String),
    #[error("{0} is not in the generating set")]
    GeneratorNotInS(String),
    #[error("census needs two distinct generators, got {0} twice")]
    RepeatedGenerator(String),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Aut(#[from] AutError),
}

/// Expected automorphism group of `Cay(S_n, S)` for one family of `T(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub family: FamilyTag,
    /// `None` when no rule in the table applies.
    pub predicted_order: Option<GroupOrder>,
    pub description: String,
    pub source: &'static str,
    /// Expected normality of `R(S_n)`, when known.
    pub normal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictionJson {
    pub family: String,
    pub predicted_order: Option<String>,
    pub description: String,
    pub source: String,
    pub normal: Option<bool>,
}

impl Prediction {
    pub fn is_unknown(&self) -> bool {
        self.predicted_order.is_none()
    }

    pub fn to_json(&self) -> PredictionJson {
        PredictionJson {
            family: self.family.to_string(),
            predicted_order: self.predicted_order.as_ref().map(|o| o.to_string()),
            description: self.description.clone(),
            source: self.source.to_string(),
            normal: self.normal,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    /// Distinct 4-cycles through `e`, `t` and `k`.
    pub four_cycles: u64,
    /// Distinct 6-cycles through `e`, `t` and `k` with a vertex at distance
    /// 3 from `e`.
    pub six_cycles: u64,
    /// Distinct distance-3 vertices on those 6-cycles.
    pub distance3_vertices: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCensus {
    pub t: String,
    pub k: String,
    pub commute: bool,
    pub census: CycleCensus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FengReport {
    pub holds: bool,
    /// Pairs where the cycle condition fails.
    pub witnesses: Vec<PairCensus>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub predicted: Prediction,
    pub computed_order: GroupOrder,
    pub computed_normal: bool,
    pub agree: bool,
    /// Set when the prediction was unknown and only computed values exist.
    pub computed_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReportJson {
    pub predicted: PredictionJson,
    pub computed_order: String,
    pub computed_normal: bool,
    pub agree: bool,
    pub computed_only: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> VerifyReportJson {
        VerifyReportJson {
            predicted: self.predicted.to_json(),
            computed_order: self.computed_order.to_string(),
            computed_normal: self.computed_normal,
            agree: self.agree,
            computed_only: self.computed_only,
        }
    }
}

fn require_connected(s: &TranspositionSet) -> Result<(), TheoremError> {
    if s.generates_full_symmetric() {
        Ok(())
    } else {
        Err(TheoremError::DisconnectedTranspositionGraph)
    }
}

/// `Aut(T(S))` acting on the points `1..=n` (vertex `i` is point `i+1`).
pub fn transposition_graph_automorphisms(s: &TranspositionSet) -> Result<AutResult, TheoremError> {
    let g = s.transposition_graph();
    Ok(automorphism_group_with(&g, AutConfig::default(), &[])?)
}

/// The vertex map `g ↦ π⁻¹gπ` induced on the Cayley graph by a point
/// permutation `π`.
pub fn lift_point_map(c: &CayleyGraph, pi: &Perm) -> Perm {
    let images = (0..c.vertex_count() as u32)
        .into_par_iter()
        .map(|v| {
            let conj = c.element(v).conjugate_by(pi);
            c.index_of(&conj).expect("conjugation preserves Gr(S)")
        })
        .collect();
    Perm::from_images0(images).expect("conjugation is a bijection")
}

/// `Aut(S_n, S)` realised on the vertices of `Cay(S_n, S)`: every
/// automorphism of `T(S)` lifted by conjugation and checked against the
/// Cayley adjacency. For `n ≥ 3` the lift is faithful, so the result has the
/// order of `Aut(T(S))`; on two points conjugation is trivial.
pub fn aut_group_fixing_s(c: &CayleyGraph) -> Result<PermGroup, TheoremError> {
    require_connected(c.base())?;
    let aut_t = transposition_graph_automorphisms(c.base())?;
    let mut gens = Vec::new();
    for pi in aut_t.group.generators() {
        let lifted = lift_point_map(c, pi);
        if !c.preserves_adjacency(&lifted) || lifted.apply0(0) != 0 {
            return Err(TheoremError::LiftVerificationFailed(pi.to_string()));
        }
        gens.push(lifted);
    }
    Ok(PermGroup::new(c.vertex_count(), gens).expect("lifted maps act on the vertex set"))
}

/// Looks `T(S)` up in the family table.
pub fn predict_aut(s: &TranspositionSet) -> Result<Prediction, TheoremError> {
    require_connected(s)?;
    let n = s.n();
    let family = s.recognize_family();
    let nf = GroupOrder::factorial(n);
    let aut_t = || transposition_graph_automorphisms(s).map(|r| r.order);
    let known = |order: GroupOrder, description: String, source: &'static str, normal: bool| Prediction {
        family,
        predicted_order: Some(order),
        description,
        source,
        normal: Some(normal),
    };
    let p = match family {
        FamilyTag::Star => known(
            &GroupOrder::factorial(n - 1) * &nf,
            format!("R(S_{n}) ⋊ S_{}", n - 1),
            "summary-star",
            true,
        ),
        FamilyTag::Path => known(
            &GroupOrder::from(2) * &nf,
            format!("R(S_{n}) ⋊ Z_2"),
            "summary-path",
            true,
        ),
        FamilyTag::Tree => {
            let a = aut_t()?;
            if a == 1u64 {
                known(nf, format!("R(S_{n})"), "summary-asymmetric-tree", true)
            } else {
                known(&a * &nf, format!("R(S_{n}) ⋊ Aut(S_{n},S)"), "feng-thm", true)
            }
        }
        FamilyTag::Cycle if n == 4 => known(
            GroupOrder::from(8 * 4 * 24),
            "D_8 · V_4 · R(S_4)".to_string(),
            "modified-bubble-sort",
            false,
        ),
        FamilyTag::Cycle if n >= 5 => known(
            &GroupOrder::from(2 * n as u64) * &nf,
            format!("R(S_{n}) ⋊ D_{}", 2 * n),
            "modified-bubble-sort",
            true,
        ),
        FamilyTag::TriangleAndSquareFree => known(
            &aut_t()? * &nf,
            format!("R(S_{n}) ⋊ Aut(S_{n},S)"),
            "triangle-square-free",
            true,
        ),
        _ => Prediction {
            family,
            predicted_order: None,
            description: "unknown".to_string(),
            source: "none",
            normal: None,
        },
    };
    Ok(p)
}

fn generator_vertex(c: &CayleyGraph, t: &Perm) -> Result<u32, TheoremError> {
    c.generator_vertex(t)
        .map_err(|_| TheoremError::GeneratorNotInS(t.to_string()))
}

/// Distances from the identity, explored only out to `radius`.
fn local_distances(c: &CayleyGraph, radius: u32) -> HashMap<u32, u32> {
    let mut dist = HashMap::from([(0u32, 0u32)]);
    let mut frontier = vec![0u32];
    for d in 1..=radius {
        let mut next = Vec::new();
        for v in frontier {
            for w in c.neighbors(v) {
                dist.entry(w).or_insert_with(|| {
                    next.push(w);
                    d
                });
            }
        }
        frontier = next;
    }
    dist
}

/// All cycles of length `len` through the identity, each once: written from
/// `e` in the direction whose second vertex is smaller.
fn cycles_through_identity(c: &CayleyGraph, len: usize) -> BTreeSet<Vec<u32>> {
    fn walk(c: &CayleyGraph, len: usize, path: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
        let last = *path.last().unwrap();
        let nbrs = c.neighbors(last);
        if path.len() == len {
            if nbrs.contains(&0) && path[1] < path[len - 1] {
                out.insert(path.clone());
            }
            return;
        }
        for w in nbrs {
            if !path.contains(&w) {
                path.push(w);
                walk(c, len, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    if len >= 3 {
        walk(c, len, &mut vec![0], &mut out);
    }
    out
}

fn census_vertices(c: &CayleyGraph, t: &Perm, k: &Perm) -> Result<(u32, u32), TheoremError> {
    let tv = generator_vertex(c, t)?;
    let kv = generator_vertex(c, k)?;
    if tv == kv {
        return Err(TheoremError::RepeatedGenerator(t.to_string()));
    }
    Ok((tv, kv))
}

/// Number of distinct 4-cycles through `e`, `t` and `k`.
pub fn four_cycle_census(c: &CayleyGraph, t: &Perm, k: &Perm) -> Result<u64, TheoremError> {
    let (tv, kv) = census_vertices(c, t, k)?;
    Ok(cycles_through_identity(c, 4)
        .iter()
        .filter(|cyc| cyc.contains(&tv) && cyc.contains(&kv))
        .count() as u64)
}

/// 4- and 6-cycle counts through `e`, `t` and `k`.
pub fn six_cycle_census(c: &CayleyGraph, t: &Perm, k: &Perm) -> Result<CycleCensus, TheoremError> {
    let (tv, kv) = census_vertices(c, t, k)?;
    let dist = local_distances(c, 3);
    let mut six_cycles = 0;
    let mut far = BTreeSet::new();
    for cyc in cycles_through_identity(c, 6) {
        if !(cyc.contains(&tv) && cyc.contains(&kv)) {
            continue;
        }
        let d3: Vec<u32> = cyc.iter().copied().filter(|v| dist.get(v) == Some(&3)).collect();
        if !d3.is_empty() {
            six_cycles += 1;
            far.extend(d3);
        }
    }
    Ok(CycleCensus {
        four_cycles: four_cycle_census(c, t, k)?,
        six_cycles,
        distance3_vertices: far.len() as u64,
    })
}

/// Censuses for every unordered pair of generators, in lexicographic order.
pub fn pair_censuses(c: &CayleyGraph) -> Result<Vec<PairCensus>, TheoremError> {
    let gens = c.base().perms();
    let pairs: Vec<(usize, usize)> = (0..gens.len())
        .flat_map(|a| (a + 1..gens.len()).map(move |b| (a, b)))
        .collect();
    pairs
        .par_iter()
        .map(|&(a, b)| {
            let (t, k) = (&gens[a], &gens[b]);
            Ok(PairCensus {
                t: t.to_string(),
                k: k.to_string(),
                commute: t.compose(k).expect("same degree") == k.compose(t).expect("same degree"),
                census: six_cycle_census(c, t, k)?,
            })
        })
        .collect()
}

/// Commuting pairs must lie on a unique 4-cycle with `e`; non-commuting
/// pairs on none, and on a unique 6-cycle reaching distance 3.
pub fn feng_condition(c: &CayleyGraph) -> Result<FengReport, TheoremError> {
    let witnesses: Vec<PairCensus> = pair_censuses(c)?
        .into_iter()
        .filter(|p| {
            let ok = if p.commute {
                p.census.four_cycles == 1
            } else {
                p.census.four_cycles == 0 && p.census.six_cycles == 1
            };
            !ok
        })
        .collect();
    Ok(FengReport {
        holds: witnesses.is_empty(),
        witnesses,
    })
}

/// Whether `R(Gr(S))` is normal in `aut.group`. Conjugates of each `r_s` by
/// each automorphism generator are tested for membership in the regular
/// group directly (an element `x` of it is determined by `x(e)`).
pub fn check_normal(c: &CayleyGraph, aut: &AutResult) -> bool {
    let rs: Vec<Perm> = c
        .base()
        .perms()
        .iter()
        .map(|s| c.right_translation(s).expect("generators lie in Gr(S)"))
        .collect();
    aut.group
        .generators()
        .iter()
        .all(|p| rs.iter().all(|r| c.is_right_translation(&r.conjugate_by(p))))
}

/// Normality through the generic subgroup test with stabilizer chains on
/// the full vertex set.
pub fn check_normal_generic(c: &CayleyGraph, aut: &AutResult) -> Result<bool, TheoremError> {
    is_normal(&c.right_translations(), &aut.group).map_err(|e| TheoremError::LiftVerificationFailed(e.to_string()))
}

/// Builds the Cayley graph within `budget` vertices, computes its
/// automorphism group, and compares with [`predict_aut`].
pub fn verify_prediction(s: &TranspositionSet, budget: u64) -> Result<VerifyReport, TheoremError> {
    let predicted = predict_aut(s)?;
    let c = build_cayley(s, budget)?;
    let config = AutConfig {
        max_vertices: budget.min(usize::MAX as u64) as usize,
    };
    let aut = cayley_automorphism_group(&c, config)?;
    let computed_normal = check_normal(&c, &aut);
    let (agree, computed_only) = match &predicted.predicted_order {
        None => (true, true),
        Some(order) => (
            *order == aut.order && predicted.normal.is_none_or(|n| n == computed_normal),
            false,
        ),
    };
    Ok(VerifyReport {
        predicted,
        computed_order: aut.order,
        computed_normal,
        agree,
        computed_only,
    })
}
