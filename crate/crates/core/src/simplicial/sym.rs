use std::collections::HashMap;

use serde::Serialize;

use super::sset::FiniteSimplicialSet;
use super::SimplicialError;
use crate::abgroup::FgAbGroup;
use crate::chain::ChainComplex;
use crate::guard::SizeGuard;

/// Number of multisets of size `n` from `m` elements.
pub fn multiset_count(m: usize, n: usize) -> u128 {
    if m == 0 {
        return (n == 0) as u128;
    }
    // C(m + n - 1, n)
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * (m as u128 + k) / (k + 1);
    }
    c
}

fn multisets(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            cur.push(x);
            rec(x, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `Sym^n X = X^n / S_n` levelwise. Orbits are sorted index tuples; faces
/// and degeneracies act coordinatewise and re-sort.
pub fn sym_power(x: &FiniteSimplicialSet, n: usize, guard: SizeGuard) -> Result<FiniteSimplicialSet, SimplicialError> {
    assert!(n >= 1, "symmetric powers start at 1");
    let top = x.top_level();
    for k in 0..=top {
        guard.check(format!("Sym^{n} at level {k}"), multiset_count(x.count(k), n))?;
    }
    let orbits: Vec<Vec<Vec<usize>>> = (0..=top).map(|k| multisets(x.count(k), n)).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> = orbits
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect())
        .collect();
    let image = |target: usize, o: &[usize], f: &[usize]| {
        let mut v: Vec<usize> = o.iter().map(|&y| f[y]).collect();
        v.sort_unstable();
        index[target][&v]
    };
    let faces = (0..=top)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                (0..=k).map(|i| orbits[k].iter().map(|o| image(k - 1, o, x.face(k, i))).collect()).collect()
            }
        })
        .collect();
    let degens = (0..top)
        .map(|k| (0..=k).map(|j| orbits[k].iter().map(|o| image(k + 1, o, x.degeneracy(k, j))).collect()).collect())
        .collect();
    let basepoint = (0..=top).map(|k| index[k][&vec![x.basepoint(k); n]]).collect();
    FiniteSimplicialSet::new(orbits.iter().map(Vec::len).collect(), faces, degens, basepoint)
}

/// Reduced chains of `Sym^n X` through `maxdeg + 1`, so that homology is
/// reliable through `maxdeg`.
pub fn sym_power_chains(x: &FiniteSimplicialSet, n: usize, maxdeg: usize, guard: SizeGuard) -> Result<ChainComplex, SimplicialError> {
    if x.top_level() < maxdeg + 1 {
        return Err(SimplicialError::TooShort {
            degree: maxdeg + 1,
            top: x.top_level(),
        });
    }
    let cut = truncate(x, maxdeg + 1);
    Ok(sym_power(&cut, n, guard)?.reduced_chains())
}

fn truncate(x: &FiniteSimplicialSet, top: usize) -> FiniteSimplicialSet {
    FiniteSimplicialSet::new(
        (0..=top).map(|k| x.count(k)).collect(),
        (0..=top).map(|k| (0..if k == 0 { 0 } else { k + 1 }).map(|i| x.face(k, i).to_vec()).collect()).collect(),
        (0..top).map(|k| (0..=k).map(|j| x.degeneracy(k, j).to_vec()).collect()).collect(),
        (0..=top).map(|k| x.basepoint(k)).collect(),
    )
    .expect("truncation of a valid simplicial set")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoldThomReport {
    pub degree: usize,
    /// `H_degree(Sym^n X)` for `n = 1 ..= n_max`.
    pub values: Vec<FgAbGroup>,
    pub stabilized: bool,
    pub stable_value: Option<FgAbGroup>,
    /// Reduced homology of `X` itself in the same degree.
    pub reduced_homology: FgAbGroup,
    pub matches_reduced_homology: bool,
}

/// Homology of the symmetric powers in one degree, with the stabilization
/// verdict (the last two values agree) and the comparison against the
/// reduced homology of `X`.
pub fn dold_thom_check(x: &FiniteSimplicialSet, n_max: usize, degree: usize, guard: SizeGuard) -> Result<DoldThomReport, SimplicialError> {
    assert!(n_max >= 1);
    let reduced_homology = truncate(x, degree + 1).reduced_chains().homology(degree)?;
    let values = (1..=n_max)
        .map(|n| Ok(sym_power_chains(x, n, degree, guard)?.homology(degree)?))
        .collect::<Result<Vec<_>, SimplicialError>>()?;
    let stabilized = n_max >= 2 && values[n_max - 1] == values[n_max - 2];
    let stable_value = stabilized.then(|| values[n_max - 1].clone());
    let matches_reduced_homology = stable_value.as_ref() == Some(&reduced_homology);
    Ok(DoldThomReport {
        degree,
        values,
        stabilized,
        stable_value,
        reduced_homology,
        matches_reduced_homology,
    })
}
