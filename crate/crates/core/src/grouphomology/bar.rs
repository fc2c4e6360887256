use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::finite::FiniteGroup;
use super::GroupError;
use crate::abgroup::{AbHom, FgAbGroup, IntMatrix, SparseIntMatrix};
use crate::chain::{induced_map, ChainComplex, HomologyBasis};
use crate::guard::SizeGuard;

/// Number of normalized bar cells `(|G| - 1)^n`.
pub fn bar_rank(order: usize, n: usize) -> u128 {
    (order as u128 - 1).pow(n as u32)
}

/// Index of a tuple of non-identity elements, first entry most significant.
#[inline]
pub fn encode(tuple: &[usize], order: usize) -> usize {
    let m = order - 1;
    tuple.iter().fold(0, |acc, &g| acc * m + (g - 1))
}

#[inline]
pub fn decode(mut idx: usize, n: usize, order: usize, out: &mut Vec<usize>) {
    let m = order - 1;
    out.clear();
    out.resize(n, 0);
    for k in (0..n).rev() {
        out[k] = idx % m + 1;
        idx /= m;
    }
}

fn check_size(g: &FiniteGroup, maxdeg: usize, guard: SizeGuard) -> Result<(), GroupError> {
    guard.check(format!("bar complex of {} in degree {maxdeg}", g.name()), bar_rank(g.order(), maxdeg))?;
    Ok(())
}

/// Boundary of `[g_1 | ... | g_n]` as `(cell, coefficient)` pairs, degenerate
/// faces dropped.
pub fn bar_boundary(g: &FiniteGroup, tuple: &[usize]) -> Vec<(usize, i64)> {
    let n = tuple.len();
    let order = g.order();
    let mut out = Vec::with_capacity(n + 1);
    if n == 1 {
        return out;
    }
    out.push((encode(&tuple[1..], order), 1));
    let mut face = Vec::with_capacity(n - 1);
    for i in 1..n {
        let p = g.mul(tuple[i - 1], tuple[i]);
        if p == 0 {
            continue;
        }
        face.clear();
        face.extend_from_slice(&tuple[..i - 1]);
        face.push(p);
        face.extend_from_slice(&tuple[i + 1..]);
        out.push((encode(&face, order), if i % 2 == 0 { 1 } else { -1 }));
    }
    out.push((encode(&tuple[..n - 1], order), if n.is_multiple_of(2) { 1 } else { -1 }));
    out
}

fn bar_differential(g: &FiniteGroup, n: usize) -> SparseIntMatrix {
    let order = g.order();
    let rows = bar_rank(order, n - 1) as usize;
    let cols = bar_rank(order, n) as usize;
    let columns: Vec<Vec<(usize, i64)>> = (0..cols)
        .into_par_iter()
        .map_init(Vec::new, |t, j| {
            decode(j, n, order, t);
            bar_boundary(g, t)
        })
        .collect();
    SparseIntMatrix::from_columns(rows, columns)
}

/// Normalized bar complex through `maxdeg`: degree `n` is free on tuples of
/// `n` non-identity elements and `C_0 = Z`.
pub fn bar_chains(g: &FiniteGroup, maxdeg: usize, guard: SizeGuard) -> Result<ChainComplex, GroupError> {
    bar_complex(g, maxdeg, guard, false)
}

/// The bar complex with `C_0 = 0`, computing reduced homology of `BG`.
pub fn reduced_bar_chains(g: &FiniteGroup, maxdeg: usize, guard: SizeGuard) -> Result<ChainComplex, GroupError> {
    bar_complex(g, maxdeg, guard, true)
}

fn bar_complex(g: &FiniteGroup, maxdeg: usize, guard: SizeGuard, reduced: bool) -> Result<ChainComplex, GroupError> {
    check_size(g, maxdeg, guard)?;
    let order = g.order();
    let mut ranks: Vec<usize> = (0..=maxdeg).map(|n| bar_rank(order, n) as usize).collect();
    if reduced {
        ranks[0] = 0;
    }
    let diffs = (1..=maxdeg)
        .map(|n| {
            if n == 1 {
                SparseIntMatrix::zeros(ranks[0], ranks[1])
            } else {
                bar_differential(g, n)
            }
        })
        .collect();
    let c = ChainComplex::unchecked(ranks, diffs, order > 1)?;
    Ok(c)
}

/// `H_i(G; Z)`. Degree 0 is `Z` without any bar computation.
pub fn group_homology(g: &FiniteGroup, i: usize, guard: SizeGuard) -> Result<FgAbGroup, GroupError> {
    if i == 0 {
        return Ok(FgAbGroup::free(1));
    }
    Ok(bar_chains(g, i + 1, guard)?.homology(i)?)
}

/// `H_1 .. H_maxdeg` from one bar complex.
pub fn group_homology_range(g: &FiniteGroup, maxdeg: usize, guard: SizeGuard) -> Result<Vec<FgAbGroup>, GroupError> {
    let c = bar_chains(g, maxdeg + 1, guard)?;
    let mut h = c.homology_all();
    h.truncate(maxdeg + 1);
    Ok(h)
}

/// Homology of the bar complex in degree `i` with representative cycles.
pub fn homology_basis(g: &FiniteGroup, i: usize, guard: SizeGuard) -> Result<HomologyBasis, GroupError> {
    Ok(bar_chains(g, i + 1, guard)?.homology_with_basis(i)?)
}

/// A subgroup with a left transversal whose first element is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    transversal: Vec<usize>,
    /// The subgroup as a group in its own right.
    group: FiniteGroup,
    /// `local -> global` element indices.
    embedding: Vec<usize>,
}

impl Subgroup {
    /// Smallest element of each left coset as representative.
    pub fn new(g: &FiniteGroup, elements: &[usize]) -> Result<Self, GroupError> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if !g.is_subgroup(&elements) {
            return Err(GroupError::NotSubgroup);
        }
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        for t in 0..g.order() {
            if !seen[t] {
                for &h in &elements {
                    seen[g.mul(t, h)] = true;
                }
                reps.push(t);
            }
        }
        Self::with_transversal(g, &elements, reps)
    }

    /// Explicit left coset representatives; the identity coset must be
    /// represented by the identity.
    pub fn with_transversal(g: &FiniteGroup, elements: &[usize], transversal: Vec<usize>) -> Result<Self, GroupError> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if !g.is_subgroup(&elements) {
            return Err(GroupError::NotSubgroup);
        }
        let mut hit = vec![false; g.order()];
        for &t in &transversal {
            for &h in &elements {
                let x = g.mul(t, h);
                if hit[x] {
                    return Err(GroupError::BadTransversal);
                }
                hit[x] = true;
            }
        }
        if hit.contains(&false) || transversal.first() != Some(&0) {
            return Err(GroupError::BadTransversal);
        }
        let mut local = vec![usize::MAX; g.order()];
        for (i, &x) in elements.iter().enumerate() {
            local[x] = i;
        }
        let k = elements.len();
        let table = (0..k * k).map(|q| local[g.mul(elements[q / k], elements[q % k])]).collect();
        let group = FiniteGroup::from_table(format!("subgroup of {}", g.name()), k, table)?;
        Ok(Subgroup {
            embedding: elements.clone(),
            elements,
            transversal,
            group,
        })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    /// Right transversal `{t^-1}` and, for every `y` in `G`, the factor
    /// `h(y) = y r(y)^-1` in local indices, where `H y = H r(y)`.
    fn right_cosets(&self, g: &FiniteGroup) -> (Vec<usize>, Vec<usize>) {
        let right: Vec<usize> = self.transversal.iter().map(|&t| g.inv(t)).collect();
        let mut local = vec![usize::MAX; g.order()];
        for (i, &x) in self.elements.iter().enumerate() {
            local[x] = i;
        }
        let mut hpart = vec![usize::MAX; g.order()];
        for &r in &right {
            for &h in &self.elements {
                hpart[g.mul(h, r)] = local[h];
            }
        }
        (right, hpart)
    }
}

/// Image of a chain under the map of bar complexes induced by a group
/// homomorphism given as an index map.
pub fn push_forward(source: &FiniteGroup, target: &FiniteGroup, f: &[usize], degree: usize, z: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); bar_rank(target.order(), degree) as usize];
    let mut t = Vec::new();
    let mut img = Vec::with_capacity(degree);
    for (j, c) in z.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        decode(j, degree, source.order(), &mut t);
        img.clear();
        img.extend(t.iter().map(|&x| f[x]));
        if degree == 0 || img.iter().all(|&x| x != 0) {
            out[encode(&img, target.order())] += c;
        }
    }
    out
}

/// Chain-level transfer `C_n(G) -> C_n(H)`:
/// `[g_1|...|g_n] -> sum_s [h(s x_0)^-1 h(s x_1) | ... ]` over the right
/// transversal, with `x_k = g_1 ... g_k`.
pub fn transfer_chain(g: &FiniteGroup, h: &Subgroup, degree: usize, z: &[BigInt]) -> Vec<BigInt> {
    let (right, hpart) = h.right_cosets(g);
    let hg = &h.group;
    let mut out = vec![BigInt::zero(); bar_rank(hg.order(), degree) as usize];
    let mut t = Vec::new();
    let mut img = Vec::with_capacity(degree);
    for (j, c) in z.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        decode(j, degree, g.order(), &mut t);
        for &s in &right {
            img.clear();
            let mut y = s;
            let mut prev = hpart[y];
            let mut degenerate = false;
            for &gk in &t {
                y = g.mul(y, gk);
                let cur = hpart[y];
                let a = hg.mul(hg.inv(prev), cur);
                if a == 0 {
                    degenerate = true;
                    break;
                }
                img.push(a);
                prev = cur;
            }
            if !degenerate {
                out[encode(&img, hg.order())] += c;
            }
        }
    }
    out
}

/// `H_i(H) -> H_i(G)` induced by the inclusion.
pub fn restriction_map(g: &FiniteGroup, h: &Subgroup, i: usize, guard: SizeGuard) -> Result<AbHom, GroupError> {
    let (bh, bg) = (homology_basis(h.group(), i, guard)?, homology_basis(g, i, guard)?);
    restriction_with(g, h, i, &bh, &bg)
}

pub fn restriction_with(g: &FiniteGroup, h: &Subgroup, i: usize, bh: &HomologyBasis, bg: &HomologyBasis) -> Result<AbHom, GroupError> {
    Ok(induced_map(bh, bg, |z| push_forward(h.group(), g, h.embedding(), i, z))?)
}

/// Transfer `H_i(G) -> H_i(H)` built from the subgroup's coset
/// representatives.
pub fn corestriction_map(h: &Subgroup, g: &FiniteGroup, i: usize, guard: SizeGuard) -> Result<AbHom, GroupError> {
    let (bh, bg) = (homology_basis(h.group(), i, guard)?, homology_basis(g, i, guard)?);
    corestriction_with(h, g, i, &bh, &bg)
}

pub fn corestriction_with(h: &Subgroup, g: &FiniteGroup, i: usize, bh: &HomologyBasis, bg: &HomologyBasis) -> Result<AbHom, GroupError> {
    Ok(induced_map(bg, bh, |z| transfer_chain(g, h, i, z))?)
}

/// Map on homology induced by a homomorphism `f : source -> target` given
/// as an index map.
pub fn induced_by_hom(source: &FiniteGroup, target: &FiniteGroup, f: &[usize], i: usize, guard: SizeGuard) -> Result<AbHom, GroupError> {
    check_hom(source, target, f)?;
    let (bs, bt) = (homology_basis(source, i, guard)?, homology_basis(target, i, guard)?);
    Ok(induced_map(&bs, &bt, |z| push_forward(source, target, f, i, z))?)
}

pub fn check_hom(source: &FiniteGroup, target: &FiniteGroup, f: &[usize]) -> Result<(), GroupError> {
    if f.len() != source.order() || f.iter().any(|&x| x >= target.order()) {
        return Err(GroupError::NotAHomomorphism);
    }
    for a in 0..source.order() {
        for b in 0..source.order() {
            if f[source.mul(a, b)] != target.mul(f[a], f[b]) {
                return Err(GroupError::NotAHomomorphism);
            }
        }
    }
    Ok(())
}

/// Classical transfer `G^ab -> H^ab`, `g -> prod_s h(s g)` over the right
/// transversal.
pub fn verlagerung(g: &FiniteGroup, h: &Subgroup) -> AbHom {
    let ag = g.abelianization_data();
    let ah = h.group().abelianization_data();
    let (right, hpart) = h.right_cosets(g);
    let k = ah.group.ngens();
    let cols: Vec<Vec<BigInt>> = ag
        .generators
        .iter()
        .map(|&x| {
            let mut v = vec![BigInt::zero(); k];
            for &s in &right {
                for (vi, li) in v.iter_mut().zip(&ah.log[hpart[g.mul(s, x)]]) {
                    *vi += li;
                }
            }
            v
        })
        .collect();
    let m = IntMatrix::from_fn(k, ag.group.ngens(), |i, j| cols[j][i].clone());
    AbHom::new(ag.group, ah.group, m).expect("transfer is a homomorphism")
}

/// The isomorphism `H_1(G) -> G^ab` sending the class of `[g]` to `g`.
pub fn h1_to_abelianization(g: &FiniteGroup, b1: &HomologyBasis) -> AbHom {
    let ab = g.abelianization_data();
    let k = ab.group.ngens();
    let cols: Vec<Vec<BigInt>> = (0..b1.group.ngens())
        .map(|j| {
            let z = b1.cycle(j);
            let mut v = vec![BigInt::zero(); k];
            for (cell, c) in z.iter().enumerate() {
                if !c.is_zero() {
                    for (vi, li) in v.iter_mut().zip(&ab.log[cell + 1]) {
                        *vi += c * li;
                    }
                }
            }
            v
        })
        .collect();
    let m = IntMatrix::from_fn(k, b1.group.ngens(), |i, j| cols[j][i].clone());
    AbHom::new(b1.group.clone(), ab.group, m).expect("H_1 maps onto the abelianization")
}
