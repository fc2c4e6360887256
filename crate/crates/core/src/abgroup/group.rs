use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::smith::{hnf, invariant_factors, snf_generic, Track};
use super::AbGroupError;
use crate::json_int;

/// A finitely generated abelian group `Z/t_1 + ... + Z/t_k + Z^r` in
/// invariant-factor form: every `t_i >= 2` and `t_i | t_{i+1}`.
///
/// Canonical generators are ordered torsion first, then free. Two values
/// are isomorphic exactly when they are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FgAbGroup {
    free_rank: usize,
    #[serde(with = "json_int::vec")]
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z`, `n = ±1` the zero group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_factors(0, [n.into()])
    }

    /// Canonical form of `Z^free_rank + sum Z/n_i`. Orders of zero count as
    /// free summands, units vanish, coprime parts merge.
    pub fn from_cyclic_factors(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free_rank;
        let mut t: Vec<BigInt> = Vec::new();
        for n in orders {
            let n = n.abs();
            if n.is_zero() {
                free_rank += 1;
            } else if !n.is_one() {
                t.push(n);
            }
        }
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let g = t[i].gcd(&t[j]);
                let l = t[i].lcm(&t[j]);
                t[i] = g;
                t[j] = l;
            }
        }
        t.retain(|x| !x.is_one());
        FgAbGroup { free_rank, torsion: t }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of canonical generator `j`, zero for free generators.
    pub fn generator_order(&self, j: usize) -> BigInt {
        self.torsion.get(j).cloned().unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Exponent of a finite group; `None` when infinite.
    pub fn exponent(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.last().cloned().unwrap_or_else(BigInt::one))
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        Self::from_cyclic_factors(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// `G / nG`.
    pub fn quotient_by_n(&self, n: &BigInt) -> FgAbGroup {
        let n = n.abs();
        Self::from_cyclic_factors(
            0,
            self.torsion
                .iter()
                .map(|t| t.gcd(&n))
                .chain(std::iter::repeat_n(n.clone(), self.free_rank)),
        )
    }

    /// `G[n] = {x : n x = 0}`, for `n != 0`.
    pub fn n_torsion(&self, n: &BigInt) -> FgAbGroup {
        assert!(!n.is_zero(), "G[0] is not finitely supported here");
        Self::from_cyclic_factors(0, self.torsion.iter().map(|t| t.gcd(n)))
    }

    /// Reduce a coordinate vector into normal form (torsion coordinates in
    /// `[0, t)`).
    pub fn reduce(&self, x: &mut [BigInt]) {
        for (xi, t) in x.iter_mut().zip(&self.torsion) {
            *xi = xi.mod_floor(t);
        }
    }

    /// Order of the element with canonical coordinates `x`; zero when it
    /// has infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> BigInt {
        if x[self.torsion.len()..].iter().any(|v| !v.is_zero()) {
            return BigInt::zero();
        }
        self.torsion
            .iter()
            .zip(x)
            .map(|(t, v)| t / t.gcd(&v.mod_floor(t)))
            .fold(BigInt::one(), |acc, o| acc.lcm(&o))
    }

    /// Relation matrix of the canonical presentation (`ngens x torsion`).
    pub fn relation_matrix(&self) -> IntMatrix {
        let k = self.torsion.len();
        let mut m = IntMatrix::zeros(self.ngens(), k);
        for (i, t) in self.torsion.iter().enumerate() {
            m[(i, i)] = t.clone();
        }
        m
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Canonical structure of `Z^r / (column span of a)` for an `r x c` matrix.
pub fn cokernel_presentation(a: &IntMatrix) -> FgAbGroup {
    let d = invariant_factors(a);
    let free = a.rows() - d.len();
    FgAbGroup::from_cyclic_factors(free, d)
}

/// Isomorphism test on canonical forms.
pub fn iso_test(g: &FgAbGroup, h: &FgAbGroup) -> bool {
    g == h
}

/// A cokernel together with coordinates: `to_canonical` sends a vector of
/// `Z^r` to the canonical coordinates of its class, `from_canonical` lifts
/// canonical generators back to `Z^r`.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FgAbGroup,
    pub to_canonical: IntMatrix,
    pub from_canonical: IntMatrix,
}

impl Cokernel {
    pub fn of(a: &IntMatrix) -> Cokernel {
        let out = snf_generic(a, Track { left: true, right: false });
        let u = out.u.expect("tracked").to_int();
        let u_inv = out.u_inv.expect("tracked").to_int();
        let r = a.rows();
        let k = out.d.len();
        let mut positions: Vec<usize> = (0..k).filter(|&i| !out.d[i].is_one()).collect();
        let torsion: Vec<BigInt> = positions.iter().map(|&i| out.d[i].clone()).collect();
        positions.extend(k..r);
        let group = FgAbGroup {
            free_rank: r - k,
            torsion,
        };
        Cokernel {
            group,
            to_canonical: u.select_rows(positions.iter().copied()),
            from_canonical: u_inv.select_cols(positions),
        }
    }

    pub fn coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.to_canonical.mul_vec(x);
        self.group.reduce(&mut y);
        y
    }

    pub fn lift(&self, j: usize) -> Vec<BigInt> {
        self.from_canonical.col(j)
    }
}

/// A homomorphism between canonical groups. Column `j` of `matrix` is the
/// image of source generator `j` in target canonical coordinates, kept
/// reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, mut matrix: IntMatrix) -> Result<AbHom, AbGroupError> {
        if matrix.shape() != (target.ngens(), source.ngens()) {
            return Err(AbGroupError::ShapeMismatch {
                expected: (target.ngens(), source.ngens()),
                found: matrix.shape(),
            });
        }
        for j in 0..matrix.cols() {
            let mut col = matrix.col(j);
            target.reduce(&mut col);
            let d = source.generator_order(j);
            if !d.is_zero() {
                let scaled: Vec<BigInt> = col.iter().map(|v| v * &d).collect();
                let killed = scaled.iter().enumerate().all(|(i, v)| match target.torsion.get(i) {
                    Some(t) => (v % t).is_zero(),
                    None => v.is_zero(),
                });
                if !killed {
                    return Err(AbGroupError::NotAHomomorphism { generator: j });
                }
            }
            for (i, v) in col.into_iter().enumerate() {
                matrix[(i, j)] = v;
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn identity(g: &FgAbGroup) -> AbHom {
        Self::scalar(g, &BigInt::one())
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> AbHom {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    /// Multiplication by `k`.
    pub fn scalar(g: &FgAbGroup, k: &BigInt) -> AbHom {
        let n = g.ngens();
        let m = IntMatrix::identity(n).scale(k);
        AbHom::new(g.clone(), g.clone(), m).expect("scalars are homomorphisms")
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn eval(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        self.target.reduce(&mut y);
        y
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbHom) -> Result<AbHom, AbGroupError> {
        if first.target != self.source {
            return Err(AbGroupError::NotComposable);
        }
        AbHom::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn cokernel(&self) -> FgAbGroup {
        cokernel_presentation(&self.target.relation_matrix().hstack(&self.matrix))
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_injective(&self) -> bool {
        // preimage of the target relations, projected to source coordinates
        let ns = self.source.ngens();
        let joint = self.matrix.hstack(&self.target.relation_matrix());
        let kern = super::smith::kernel(&joint);
        let preimage = kern.basis.select_rows(0..ns);
        let lattice = |m: &IntMatrix| {
            let h = hnf(m);
            let nz: Vec<usize> = (0..h.cols()).filter(|&j| h.col(j).iter().any(|v| !v.is_zero())).collect();
            h.select_cols(nz)
        };
        lattice(&preimage) == lattice(&self.source.relation_matrix())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    /// Order of the image, for finite targets.
    pub fn image_order(&self) -> Option<BigInt> {
        let t = self.target.order()?;
        let c = self.cokernel().order()?;
        Some(t / c)
    }
}

/// The completion `A ⊗ Ẑ` of a finitely generated abelian group `A`:
/// `Ẑ^zhat_rank` plus the (already complete) torsion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProfiniteFgAb {
    zhat_rank: usize,
    #[serde(with = "json_int::vec")]
    torsion: Vec<BigInt>,
}

impl ProfiniteFgAb {
    pub fn zhat_rank(&self) -> usize {
        self.zhat_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn direct_sum(&self, other: &ProfiniteFgAb) -> ProfiniteFgAb {
        let g = FgAbGroup::from_cyclic_factors(0, self.torsion.iter().chain(&other.torsion).cloned());
        ProfiniteFgAb {
            zhat_rank: self.zhat_rank + other.zhat_rank,
            torsion: g.torsion,
        }
    }

    /// The finite group underlying a completion with no `Ẑ` summand.
    pub fn as_finite(&self) -> Option<FgAbGroup> {
        (self.zhat_rank == 0).then(|| FgAbGroup::from_cyclic_factors(0, self.torsion.iter().cloned()))
    }
}

impl fmt::Display for ProfiniteFgAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zhat_rank == 0 && self.torsion.is_empty() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.zhat_rank {
            0 => {}
            1 => parts.push("Zhat".into()),
            r => parts.push(format!("Zhat^{r}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

pub fn profinite_complete(g: &FgAbGroup) -> ProfiniteFgAb {
    ProfiniteFgAb {
        zhat_rank: g.free_rank,
        torsion: g.torsion.clone(),
    }
}

/// A finite abelian group given by its multiplication table, with discrete
/// logarithms into the canonical form.
#[derive(Clone, Debug)]
pub struct FiniteAbelian {
    pub group: FgAbGroup,
    /// Canonical coordinates of each element.
    pub log: Vec<Vec<BigInt>>,
    /// An element realizing each canonical generator.
    pub generators: Vec<usize>,
}

impl FiniteAbelian {
    /// Element with the given canonical coordinates.
    pub fn element(&self, x: &[BigInt]) -> usize {
        let mut y = x.to_vec();
        self.group.reduce(&mut y);
        self.log.iter().position(|l| *l == y).expect("coordinates of an element")
    }
}

/// Structure of the abelian group `{0..n}` under `mul` with identity `identity`.
pub fn abelian_from_table(n: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteAbelian {
    assert!(n > 0);
    // greedy generating set and BFS words in it
    let mut gens: Vec<usize> = Vec::new();
    let mut word: Vec<Option<Vec<i64>>> = vec![None; n];
    word[identity] = Some(Vec::new());
    for x in 0..n {
        if word[x].is_some() {
            continue;
        }
        gens.push(x);
        let k = gens.len();
        let mut queue: VecDeque<usize> = (0..n).filter(|&y| word[y].is_some()).collect();
        for w in word.iter_mut().flatten() {
            w.resize(k, 0);
        }
        while let Some(y) = queue.pop_front() {
            for (s, &g) in gens.iter().enumerate() {
                let z = mul(y, g);
                if word[z].is_none() {
                    let mut w = word[y].clone().expect("visited");
                    w[s] += 1;
                    word[z] = Some(w);
                    queue.push_back(z);
                }
            }
        }
    }
    let k = gens.len();
    let word: Vec<Vec<i64>> = word.into_iter().map(|w| w.expect("all reached")).collect();
    let mut rels: Vec<Vec<i64>> = Vec::with_capacity(n * k);
    for y in 0..n {
        for (s, &g) in gens.iter().enumerate() {
            let z = mul(y, g);
            let mut r: Vec<i64> = (0..k).map(|i| word[y][i] - word[z][i]).collect();
            r[s] += 1;
            if r.iter().any(|&v| v != 0) {
                rels.push(r);
            }
        }
    }
    let rel = if rels.is_empty() {
        IntMatrix::zeros(k, 0)
    } else {
        IntMatrix::from_rows(&rels).transpose()
    };
    let h = hnf(&rel);
    let nz: Vec<usize> = (0..h.cols()).filter(|&j| (0..k).any(|i| !h[(i, j)].is_zero())).collect();
    let ck = Cokernel::of(&h.select_cols(nz));
    let log: Vec<Vec<BigInt>> = word
        .iter()
        .map(|w| ck.coords(&w.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>()))
        .collect();
    let order_of = |g: usize| {
        let mut o = 1usize;
        let mut x = g;
        while x != identity {
            x = mul(x, g);
            o += 1;
        }
        o
    };
    let gen_orders: Vec<usize> = gens.iter().map(|&g| order_of(g)).collect();
    let generators = (0..ck.group.ngens())
        .map(|j| {
            let c = ck.lift(j);
            let mut x = identity;
            for (s, &g) in gens.iter().enumerate() {
                let e = c[s].mod_floor(&BigInt::from(gen_orders[s])).to_usize().expect("small exponent");
                for _ in 0..e {
                    x = mul(x, g);
                }
            }
            x
        })
        .collect();
    FiniteAbelian {
        group: ck.group,
        log,
        generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn canonical_form_merges_coprime_factors() {
        let g = FgAbGroup::from_cyclic_factors(0, [b(2), b(3)]);
        assert_eq!(g, FgAbGroup::cyclic(6));
        let g = FgAbGroup::from_cyclic_factors(1, [b(4), b(6), b(1), b(0)]);
        assert_eq!(g.torsion(), &[b(2), b(12)]);
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.to_string(), "Z/2 + Z/12 + Z^2");
        assert_eq!(FgAbGroup::cyclic(1), FgAbGroup::zero());
        assert_eq!(FgAbGroup::cyclic(0), FgAbGroup::free(1));
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_presentation(&IntMatrix::from_rows(&[[2]])), FgAbGroup::cyclic(2));
        assert_eq!(cokernel_presentation(&IntMatrix::zeros(2, 0)), FgAbGroup::free(2));
        assert_eq!(cokernel_presentation(&IntMatrix::from_rows(&[[2, 0], [0, 3]])), FgAbGroup::cyclic(6));
    }

    /// Brute force: Z/2 + Z/3 and Z/6 both contain an element of order 6,
    /// so they are the same (cyclic) group of order 6.
    #[test]
    fn order_six_oracle() {
        let z2z3 = |x: (u32, u32)| {
            let mut o = 1;
            let mut y = x;
            while y != (0, 0) {
                y = ((y.0 + x.0) % 2, (y.1 + x.1) % 3);
                o += 1;
            }
            o
        };
        assert!((0..2).flat_map(|a| (0..3).map(move |c| (a, c))).any(|x| z2z3(x) == 6));
        assert!(iso_test(&FgAbGroup::from_cyclic_factors(0, [b(2), b(3)]), &FgAbGroup::cyclic(6)));
        assert!(!iso_test(&FgAbGroup::free(1), &FgAbGroup::cyclic(2)));
        assert!(iso_test(&FgAbGroup::zero(), &FgAbGroup::zero()));
    }

    #[test]
    fn cokernel_coordinates_are_consistent() {
        let a = IntMatrix::from_rows(&[[2, 0, 4], [0, 6, 6], [0, 0, 0]]);
        let ck = Cokernel::of(&a);
        assert_eq!(ck.group, cokernel_presentation(&a));
        // relations vanish
        for j in 0..a.cols() {
            assert!(ck.coords(&a.col(j)).iter().all(Zero::is_zero));
        }
        // lifts of generators map back to unit vectors
        for j in 0..ck.group.ngens() {
            let y = ck.coords(&ck.lift(j));
            for (i, v) in y.iter().enumerate() {
                assert_eq!(v, &b(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn hom_validation() {
        let z4 = FgAbGroup::cyclic(4);
        let z2 = FgAbGroup::cyclic(2);
        // Z/2 -> Z/4, 1 -> 2
        assert!(AbHom::new(z2.clone(), z4.clone(), IntMatrix::from_rows(&[[2]])).is_ok());
        assert_eq!(
            AbHom::new(z2.clone(), z4.clone(), IntMatrix::from_rows(&[[1]])),
            Err(AbGroupError::NotAHomomorphism { generator: 0 })
        );
        let inc = AbHom::new(z2.clone(), z4.clone(), IntMatrix::from_rows(&[[6]])).unwrap();
        assert_eq!(inc.matrix()[(0, 0)], b(2));
        assert!(inc.is_injective() && !inc.is_surjective());
        let red = AbHom::new(z4.clone(), z2.clone(), IntMatrix::from_rows(&[[1]])).unwrap();
        assert!(red.is_surjective() && !red.is_injective());
        assert_eq!(red.compose(&inc).unwrap(), AbHom::zero(&z2, &z2));
        assert!(AbHom::identity(&z4).is_isomorphism());
        let free = FgAbGroup::free(1);
        let dbl = AbHom::scalar(&free, &b(2));
        assert!(dbl.is_injective() && !dbl.is_surjective());
        assert_eq!(dbl.cokernel(), z2);
    }

    #[test]
    fn quotient_and_torsion() {
        let g = FgAbGroup::from_cyclic_factors(1, [b(4), b(6)]);
        assert_eq!(g.quotient_by_n(&b(2)), FgAbGroup::from_cyclic_factors(0, [b(2), b(2), b(2)]));
        assert_eq!(g.n_torsion(&b(4)), FgAbGroup::from_cyclic_factors(0, [b(4), b(2)]));
        assert_eq!(g.element_order(&[b(1), b(3), b(0)]), b(4));
        assert_eq!(g.element_order(&[b(0), b(0), b(1)]), b(0));
    }

    #[test]
    fn completion_examples() {
        let c = profinite_complete(&FgAbGroup::free(1));
        assert_eq!((c.zhat_rank(), c.torsion().len()), (1, 0));
        assert_eq!(profinite_complete(&FgAbGroup::cyclic(6)).as_finite(), Some(FgAbGroup::cyclic(6)));
        let g = FgAbGroup::from_cyclic_factors(1, [b(4)]);
        let c = profinite_complete(&g);
        assert_eq!((c.zhat_rank(), c.torsion()), (1, &[b(4)][..]));
        assert_eq!(c.to_string(), "Z/4 + Zhat");
    }

    #[test]
    fn cayley_table_structure() {
        // Z/2 x Z/4 as pairs
        let enc = |a: usize, c: usize| a * 4 + c;
        let mul = |x: usize, y: usize| enc((x / 4 + y / 4) % 2, (x % 4 + y % 4) % 4);
        let fa = abelian_from_table(8, 0, mul);
        assert_eq!(fa.group, FgAbGroup::from_cyclic_factors(0, [b(2), b(4)]));
        for x in 0..8 {
            for y in 0..8 {
                let mut s: Vec<BigInt> = fa.log[x].iter().zip(&fa.log[y]).map(|(p, q)| p + q).collect();
                fa.group.reduce(&mut s);
                assert_eq!(s, fa.log[mul(x, y)]);
            }
        }
        for (j, &g) in fa.generators.iter().enumerate() {
            let unit: Vec<BigInt> = (0..fa.group.ngens()).map(|i| b(i64::from(i == j))).collect();
            assert_eq!(fa.log[g], unit);
        }
    }
}
