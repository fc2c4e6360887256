//! The derived abelianization of a finite group as a connective chain
//! complex, its homotopy groups, towers of finite quotients and the transfer.
//!
//! The chain model is the reduced normalized bar complex shifted down by
//! one, so `pi_i` is `H_{i+1}` of the group.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abgroup::{profinite_complete, AbHom, FgAbGroup, IntMatrix, ProfiniteFgAb};
use crate::chain::{induced_map, ChainComplex, ChainError, HomologyBasis};
use crate::grouphomology::{
    bar_rank, check_hom, push_forward, reduced_bar_chains, transfer_chain, FiniteGroup, GroupError, Subgroup,
};
use crate::guard::{SizeGuard, SizeGuardExceeded};

pub const TOWER_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivedError {
    #[error("pi_{degree} is not reliable: the model stops at degree {top}")]
    Unreliable { degree: usize, top: usize },
    #[error("tower map {index} is not a surjective homomorphism")]
    BadTowerMap { index: usize },
    #[error("a tower needs one map between consecutive levels")]
    TowerShape,
    #[error("malformed tower document: {0}")]
    Json(String),
    #[error("unsupported tower schema version {0}")]
    SchemaVersion(u32),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    SizeGuard(#[from] SizeGuardExceeded),
}

/// Chain-level model of the derived abelianization.
#[derive(Clone, Debug)]
pub struct DerivedAbelianization {
    pub source: String,
    pub order: usize,
    pub chain: ChainComplex,
    /// Highest degree of the chain model; `pi` is reliable below it.
    pub maxdeg: usize,
}

/// Reduced bar chains through `maxdeg + 1`, shifted down by one.
pub fn derived_abelianization(g: &FiniteGroup, maxdeg: usize, guard: SizeGuard) -> Result<DerivedAbelianization, DerivedError> {
    let chain = reduced_bar_chains(g, maxdeg + 1, guard)?.shift(-1);
    Ok(DerivedAbelianization {
        source: g.name().to_string(),
        order: g.order(),
        chain,
        maxdeg,
    })
}

impl DerivedAbelianization {
    fn check(&self, i: usize) -> Result<(), DerivedError> {
        if i > self.maxdeg || !self.chain.is_reliable(i) {
            return Err(DerivedError::Unreliable {
                degree: i,
                top: self.maxdeg,
            });
        }
        Ok(())
    }

    pub fn pi(&self, i: usize) -> Result<FgAbGroup, DerivedError> {
        self.check(i)?;
        Ok(self.chain.homology(i)?)
    }

    /// All reliable homotopy groups, each differential reduced once.
    pub fn pis(&self) -> Vec<FgAbGroup> {
        let mut h = self.chain.homology_all();
        let reliable = (0..=self.maxdeg).filter(|&i| self.chain.is_reliable(i)).count();
        h.truncate(reliable);
        h
    }

    pub fn pi_basis(&self, i: usize) -> Result<HomologyBasis, DerivedError> {
        self.check(i)?;
        Ok(self.chain.homology_with_basis(i)?)
    }
}

/// `pi_i` of the derived abelianization, computed through the shifted model.
pub fn pi(g: &FiniteGroup, i: usize, guard: SizeGuard) -> Result<FgAbGroup, DerivedError> {
    derived_abelianization(g, i + 1, guard)?.pi(i)
}

/// Map on `pi_i` induced by a homomorphism given as an index map.
pub fn induced_on_pi(source: &FiniteGroup, target: &FiniteGroup, f: &[usize], i: usize, guard: SizeGuard) -> Result<AbHom, DerivedError> {
    check_hom(source, target, f)?;
    let bs = derived_abelianization(source, i + 1, guard)?.pi_basis(i)?;
    let bt = derived_abelianization(target, i + 1, guard)?.pi_basis(i)?;
    Ok(induced_map(&bs, &bt, |z| push_forward(source, target, f, i + 1, z))?)
}

/// `pi_i(G) -> pi_i(H)` from the chain-level transfer in bar degree `i + 1`.
pub fn transfer_derived(g: &FiniteGroup, h: &Subgroup, i: usize, guard: SizeGuard) -> Result<AbHom, DerivedError> {
    let bg = derived_abelianization(g, i + 1, guard)?.pi_basis(i)?;
    let bh = derived_abelianization(h.group(), i + 1, guard)?.pi_basis(i)?;
    Ok(induced_map(&bg, &bh, |z| transfer_chain(g, h, i + 1, z))?)
}

/// `G^ab -> Q^ab` induced by a homomorphism.
pub fn abelianization_map(source: &FiniteGroup, target: &FiniteGroup, f: &[usize]) -> Result<AbHom, DerivedError> {
    check_hom(source, target, f)?;
    let a = source.abelianization_data();
    let b = target.abelianization_data();
    let cols: Vec<Vec<BigInt>> = a.generators.iter().map(|&x| b.log[f[x]].clone()).collect();
    let m = IntMatrix::from_fn(b.group.ngens(), a.group.ngens(), |i, j| cols[j][i].clone());
    Ok(AbHom::new(a.group, b.group, m).map_err(ChainError::from)?)
}

/// Finite groups `G_0 <- G_1 <- ...` with surjections `maps[k] : G_{k+1} ->
/// G_k` given as index maps.
#[derive(Clone, Debug)]
pub struct FiniteQuotientTower {
    levels: Vec<FiniteGroup>,
    maps: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TowerDoc {
    schema_version: u32,
    levels: Vec<serde_json::Value>,
    maps: Vec<Vec<usize>>,
}

impl FiniteQuotientTower {
    pub fn new(levels: Vec<FiniteGroup>, maps: Vec<Vec<usize>>) -> Result<Self, DerivedError> {
        if levels.is_empty() || maps.len() + 1 != levels.len() {
            return Err(DerivedError::TowerShape);
        }
        for (k, f) in maps.iter().enumerate() {
            let (src, dst) = (&levels[k + 1], &levels[k]);
            check_hom(src, dst, f).map_err(|_| DerivedError::BadTowerMap { index: k })?;
            let mut hit = vec![false; dst.order()];
            for &y in f {
                hit[y] = true;
            }
            if hit.contains(&false) {
                return Err(DerivedError::BadTowerMap { index: k });
            }
        }
        Ok(FiniteQuotientTower { levels, maps })
    }

    /// `G` repeated `len` times with identity maps.
    pub fn constant(g: &FiniteGroup, len: usize) -> Self {
        let id: Vec<usize> = (0..g.order()).collect();
        FiniteQuotientTower {
            levels: vec![g.clone(); len],
            maps: vec![id; len.saturating_sub(1)],
        }
    }

    /// `Z/p <- Z/p^2 <- ... <- Z/p^k` with reduction maps.
    pub fn cyclic_p_power(p: usize, k: usize) -> Self {
        let levels: Vec<FiniteGroup> = (1..=k).map(|e| crate::grouphomology::cyclic(p.pow(e as u32))).collect();
        let maps = (1..k).map(|e| (0..p.pow(e as u32 + 1)).map(|x| x % p.pow(e as u32)).collect()).collect();
        FiniteQuotientTower::new(levels, maps).expect("reduction maps are surjective homomorphisms")
    }

    /// `G / gamma_2 <- G / gamma_3 <- ... <- G` along the lower central
    /// series, stopping when it does.
    pub fn lower_central(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut terms: Vec<Vec<usize>> = vec![(0..n).collect()];
        loop {
            let last = terms.last().expect("nonempty");
            let comms: Vec<usize> = (0..n).flat_map(|a| last.iter().map(move |&b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
            let next = g.generated(&comms);
            if next.len() == last.len() {
                break;
            }
            let done = next.len() == 1;
            terms.push(next);
            if done {
                break;
            }
        }
        let quotients: Vec<(FiniteGroup, Vec<usize>)> = terms[1..]
            .iter()
            .enumerate()
            .map(|(k, t)| g.quotient(t, format!("{}/gamma_{}", g.name(), k + 2)).expect("terms are normal"))
            .collect();
        let mut levels: Vec<FiniteGroup> = quotients.iter().map(|(q, _)| q.clone()).collect();
        let mut maps = Vec::new();
        for k in 0..quotients.len().saturating_sub(1) {
            // x in G/gamma_{k+3} maps to the coset of any preimage
            let (up, proj_up) = (&quotients[k + 1].0, &quotients[k + 1].1);
            let proj_down = &quotients[k].1;
            let mut f = vec![0; up.order()];
            for x in 0..n {
                f[proj_up[x]] = proj_down[x];
            }
            maps.push(f);
        }
        if levels.last().map(FiniteGroup::order) != Some(n) {
            if let Some((_, proj)) = quotients.last() {
                maps.push(proj.clone());
            }
            levels.push(g.clone());
        }
        FiniteQuotientTower::new(levels, maps).expect("lower central quotients form a tower")
    }

    pub fn levels(&self) -> &[FiniteGroup] {
        &self.levels
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn to_json(&self) -> String {
        let doc = TowerDoc {
            schema_version: TOWER_SCHEMA_VERSION,
            levels: self
                .levels
                .iter()
                .map(|g| serde_json::from_str(&g.to_json()).expect("group json"))
                .collect(),
            maps: self.maps.clone(),
        };
        serde_json::to_string(&doc).expect("towers serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, DerivedError> {
        let doc: TowerDoc = serde_json::from_str(s).map_err(|e| DerivedError::Json(e.to_string()))?;
        if doc.schema_version != TOWER_SCHEMA_VERSION {
            return Err(DerivedError::SchemaVersion(doc.schema_version));
        }
        let levels = doc
            .levels
            .iter()
            .map(|v| FiniteGroup::from_json(&v.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(levels, doc.maps)
    }
}

/// `pi_i` along a tower with its transition maps.
#[derive(Clone, Debug)]
pub struct ProfiniteDerivedPi {
    pub degree: usize,
    pub values: Vec<FgAbGroup>,
    /// `transitions[k] : values[k + 1] -> values[k]`.
    pub transitions: Vec<AbHom>,
    pub stabilized: bool,
    /// First level, counted from 1, such that it and every level above it
    /// map isomorphically onto the level below.
    pub stable_from: Option<usize>,
    /// Emitted only when stabilized.
    pub limit: Option<ProfiniteFgAb>,
}

/// Per-level `pi_i` and the maps induced by the tower's surjections. The
/// limit is reported only when the top transition is an isomorphism;
/// otherwise the raw inverse system is returned unstabilized.
pub fn profinite_derived_pi(t: &FiniteQuotientTower, i: usize, guard: SizeGuard) -> Result<ProfiniteDerivedPi, DerivedError> {
    for g in &t.levels {
        guard.check(format!("bar complex of {} in degree {}", g.name(), i + 2), bar_rank(g.order(), i + 2))?;
    }
    let bases = t
        .levels
        .par_iter()
        .map(|g| derived_abelianization(g, i + 1, guard)?.pi_basis(i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut transitions = Vec::new();
    for (k, f) in t.maps.iter().enumerate() {
        let (src, dst) = (&t.levels[k + 1], &t.levels[k]);
        transitions.push(induced_map(&bases[k + 1], &bases[k], |z| push_forward(src, dst, f, i + 1, z))?);
    }
    let values: Vec<FgAbGroup> = bases.iter().map(|b| b.group.clone()).collect();
    let iso: Vec<bool> = transitions.iter().map(AbHom::is_isomorphism).collect();
    let stabilized = iso.last().copied().unwrap_or(false);
    let stable_from = stabilized.then(|| {
        let first_good = iso.iter().rposition(|&b| !b).map_or(0, |k| k + 1);
        first_good + 2
    });
    let limit = stabilized.then(|| profinite_complete(values.last().expect("nonempty tower")));
    Ok(ProfiniteDerivedPi {
        degree: i,
        values,
        transitions,
        stabilized,
        stable_from,
        limit,
    })
}
