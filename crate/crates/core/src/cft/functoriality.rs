use num_bigint::BigInt;
use rayon::prelude::*;

use super::report::Report;
use super::CftError;
use crate::abgroup::AbHom;
use crate::chain::HomologyBasis;
use crate::derivedab::transfer_derived;
use crate::grouphomology::{
    bar_chains, catalog, corestriction_with, h1_to_abelianization, restriction_with, verlagerung, FiniteGroup, Subgroup,
};
use crate::guard::SizeGuard;

/// A group with one of its subgroups and a label for reports.
#[derive(Clone, Debug)]
pub struct SubgroupPair {
    pub label: String,
    pub group: FiniteGroup,
    pub subgroup: Vec<usize>,
}

/// Every subgroup of every catalog group of order at most `max_order`.
pub fn catalog_pairs(max_order: usize) -> Vec<SubgroupPair> {
    catalog()
        .iter()
        .filter(|e| e.group.order() <= max_order)
        .flat_map(|e| {
            e.group.subgroups().into_iter().enumerate().map(move |(k, s)| SubgroupPair {
                label: format!("{} > H{} (order {})", e.name, k, s.len()),
                group: e.group.clone(),
                subgroup: s,
            })
        })
        .collect()
}

fn bases(g: &FiniteGroup, max_degree: usize, guard: SizeGuard) -> Result<Vec<HomologyBasis>, CftError> {
    let c = bar_chains(g, max_degree + 1, guard)?;
    (0..=max_degree)
        .map(|i| c.homology_with_basis(i).map_err(|e| CftError::Group(e.into())))
        .collect()
}

struct PairOutcome {
    label: String,
    index: usize,
    squares: Vec<(usize, AbHom, AbHom)>,
    transfer: (AbHom, AbHom),
}

fn run_pair(p: &SubgroupPair, max_degree: usize, guard: SizeGuard, bg: &[HomologyBasis]) -> Result<PairOutcome, CftError> {
    let g = &p.group;
    let h = Subgroup::new(g, &p.subgroup)?;
    let bh = bases(h.group(), max_degree, guard)?;
    let mut squares = Vec::new();
    for i in 0..=max_degree {
        let res = restriction_with(g, &h, i, &bh[i], &bg[i])?;
        let cores = corestriction_with(&h, g, i, &bh[i], &bg[i])?;
        let comp = res.compose(&cores).map_err(|_| CftError::Internal("maps do not compose"))?;
        let index = AbHom::scalar(&bg[i].group, &BigInt::from(h.index()));
        squares.push((i, comp, index));
    }
    let t = transfer_derived(g, &h, 0, guard)?;
    let phi_g = h1_to_abelianization(g, &bg[1]);
    let phi_h = h1_to_abelianization(h.group(), &bh[1]);
    let lhs = phi_h.compose(&t).map_err(|_| CftError::Internal("maps do not compose"))?;
    let v = verlagerung(g, &h);
    let rhs = v.compose(&phi_g).map_err(|_| CftError::Internal("maps do not compose"))?;
    Ok(PairOutcome {
        label: p.label.clone(),
        index: h.index(),
        squares,
        transfer: (lhs, rhs),
    })
}

/// For each pair: the inclusion square `res . cores = [G:H]` on `H_i` for
/// `i <= max_degree`, and the transfer square comparing the chain-level
/// transfer on `pi_0` of the derived abelianization with the classical
/// Verlagerung.
pub fn norm_transfer_report(pairs: &[SubgroupPair], max_degree: usize, guard: SizeGuard) -> Result<Report, CftError> {
    let max_degree = max_degree.max(1);
    let mut groups: Vec<&FiniteGroup> = Vec::new();
    for p in pairs {
        if !groups.contains(&&p.group) {
            groups.push(&p.group);
        }
    }
    let group_bases: Vec<Vec<HomologyBasis>> = groups.par_iter().map(|g| bases(g, max_degree, guard)).collect::<Result<_, _>>()?;
    let outcomes: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|p| {
            let k = groups.iter().position(|g| *g == &p.group).expect("listed");
            run_pair(p, max_degree, guard, &group_bases[k])
        })
        .collect::<Result<_, _>>()?;
    let mut r = Report::new("functoriality squares", None);
    for o in outcomes {
        for (i, comp, index) in &o.squares {
            r.check(
                format!("inclusion square {} on H_{i}: res . cores = {}", o.label, o.index),
                comp.matrix(),
                index.matrix(),
                comp == index,
                "restriction_map, corestriction_map",
            );
        }
        let (lhs, rhs) = &o.transfer;
        r.check(
            format!("transfer square {} on pi_0: transfer = Verlagerung", o.label),
            lhs.matrix(),
            rhs.matrix(),
            lhs == rhs,
            "transfer_derived, verlagerung",
        );
    }
    r.note("norm maps between distinct number fields are out of scope; only the group-theoretic squares are checked");
    Ok(r)
}
