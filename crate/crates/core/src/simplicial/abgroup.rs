use num_bigint::BigInt;
use num_traits::Zero;

use super::identities::{cosimplicial, identities, surjections, target_level, Op};
use super::sset::FiniteSimplicialSet;
use super::SimplicialError;
use crate::abgroup::{kernel, AbHom, Cokernel, FgAbGroup, IntMatrix, SparseIntMatrix};
use crate::chain::{dense_times_sparse, ChainComplex};

/// A simplicial abelian group truncated at level `N`, free in every level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialAbGroup {
    ranks: Vec<usize>,
    /// `faces[n][i] : A_n -> A_{n-1}`; `faces[0]` is empty.
    faces: Vec<Vec<IntMatrix>>,
    /// `degens[n][j] : A_n -> A_{n+1}` for `n < N`.
    degens: Vec<Vec<IntMatrix>>,
}

impl SimplicialAbGroup {
    /// Checks shapes; the simplicial identities are checked by
    /// [`SimplicialAbGroup::validate`].
    pub fn new(ranks: Vec<usize>, faces: Vec<Vec<IntMatrix>>, degens: Vec<Vec<IntMatrix>>) -> Result<Self, SimplicialError> {
        let top = ranks.len().checked_sub(1).ok_or(SimplicialError::Empty)?;
        if faces.len() != top + 1 || degens.len() != top {
            return Err(SimplicialError::MapCount { level: top });
        }
        for n in 0..=top {
            let want_faces = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != want_faces {
                return Err(SimplicialError::MapCount { level: n });
            }
            for m in &faces[n] {
                if m.shape() != (ranks[n - 1], ranks[n]) {
                    return Err(SimplicialError::MapShape { level: n });
                }
            }
            if n < top {
                if degens[n].len() != n + 1 {
                    return Err(SimplicialError::MapCount { level: n });
                }
                for m in &degens[n] {
                    if m.shape() != (ranks[n + 1], ranks[n]) {
                        return Err(SimplicialError::MapShape { level: n });
                    }
                }
            }
        }
        Ok(SimplicialAbGroup { ranks, faces, degens })
    }

    /// The constant simplicial group on `Z^rank` (every map the identity).
    pub fn constant(rank: usize, top: usize) -> Self {
        let id = IntMatrix::identity(rank);
        SimplicialAbGroup {
            ranks: vec![rank; top + 1],
            faces: (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            degens: (0..top).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    /// Levelwise free abelian group on a simplicial set.
    pub fn free_on(x: &FiniteSimplicialSet) -> Self {
        let top = x.top_level();
        let ranks: Vec<usize> = (0..=top).map(|n| x.count(n)).collect();
        let perm = |f: &[usize], rows: usize| {
            let mut m = IntMatrix::zeros(rows, f.len());
            for (j, &i) in f.iter().enumerate() {
                m[(i, j)] = BigInt::from(1);
            }
            m
        };
        let faces = (0..=top)
            .map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| perm(x.face(n, i), ranks[n - 1])).collect() })
            .collect();
        let degens = (0..top).map(|n| (0..=n).map(|j| perm(x.degeneracy(n, j), ranks[n + 1])).collect()).collect();
        SimplicialAbGroup { ranks, faces, degens }
    }

    pub fn top_level(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &IntMatrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &IntMatrix {
        &self.degens[n][j]
    }

    /// `d_i` on level `n` as a homomorphism of free groups.
    pub fn face_hom(&self, n: usize, i: usize) -> AbHom {
        AbHom::new(FgAbGroup::free(self.ranks[n]), FgAbGroup::free(self.ranks[n - 1]), self.faces[n][i].clone())
            .expect("maps between free groups")
    }

    pub fn degeneracy_hom(&self, n: usize, j: usize) -> AbHom {
        AbHom::new(FgAbGroup::free(self.ranks[n]), FgAbGroup::free(self.ranks[n + 1]), self.degens[n][j].clone())
            .expect("maps between free groups")
    }

    fn op(&self, op: Op, level: usize) -> &IntMatrix {
        match op {
            Op::D(i) => &self.faces[level][i],
            Op::S(j) => &self.degens[level][j],
        }
    }

    fn composite(&self, ops: &[Op], level: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(self.ranks[level]);
        let mut l = level;
        for &op in ops.iter().rev() {
            m = self.op(op, l).mul(&m);
            l = target_level(op, l);
        }
        m
    }

    /// Every simplicial identity as a matrix equation; the first failure
    /// names its left-hand composite and level.
    pub fn validate(&self) -> Result<(), SimplicialError> {
        for id in identities(self.top_level()) {
            if self.composite(&id.lhs, id.level) != self.composite(&id.rhs, id.level) {
                return Err(SimplicialError::Identity {
                    identity: id.lhs_name(),
                    full: id.name(),
                    level: id.level,
                });
            }
        }
        Ok(())
    }

    /// Normalized chains: degree `n` is the intersection of the kernels of
    /// `d_1 .. d_n` (in a saturated basis), with differential `d_0`.
    pub fn normalized_chains(&self) -> ChainComplex {
        let top = self.top_level();
        let mut bases = Vec::with_capacity(top + 1);
        let mut coords = Vec::with_capacity(top + 1);
        for n in 0..=top {
            if n == 0 {
                bases.push(IntMatrix::identity(self.ranks[0]));
                coords.push(IntMatrix::identity(self.ranks[0]));
                continue;
            }
            let stacked = (2..=n).fold(self.faces[n][1].clone(), |acc, i| acc.vstack(&self.faces[n][i]));
            let k = kernel(&stacked);
            bases.push(k.basis);
            coords.push(k.coords);
        }
        let ranks: Vec<usize> = bases.iter().map(IntMatrix::cols).collect();
        let diffs = (1..=top)
            .map(|n| SparseIntMatrix::from_dense(&coords[n - 1].mul(&self.faces[n][0]).mul(&bases[n])))
            .collect();
        ChainComplex::unchecked(ranks, diffs, true).expect("shapes agree by construction")
    }

    /// The alternative model: all chains modulo the degenerate ones, with
    /// the alternating face sum.
    pub fn degenerate_quotient_chains(&self) -> ChainComplex {
        let top = self.top_level();
        let quotients: Vec<Cokernel> = (0..=top)
            .map(|n| {
                let degenerate = if n == 0 {
                    IntMatrix::zeros(self.ranks[0], 0)
                } else {
                    (1..n).fold(self.degens[n - 1][0].clone(), |acc, j| acc.hstack(&self.degens[n - 1][j]))
                };
                Cokernel::of(&degenerate)
            })
            .collect();
        for q in &quotients {
            debug_assert!(q.group.torsion().is_empty(), "degenerate part is a direct summand");
        }
        let ranks: Vec<usize> = quotients.iter().map(|q| q.group.free_rank()).collect();
        let diffs = (1..=top)
            .map(|n| {
                let mut d = IntMatrix::zeros(self.ranks[n - 1], self.ranks[n]);
                for (i, f) in self.faces[n].iter().enumerate() {
                    d = if i % 2 == 0 { d.add(f) } else { d.sub(f) };
                }
                let m = quotients[n - 1].to_canonical.mul(&d).mul(&quotients[n].from_canonical);
                SparseIntMatrix::from_dense(&m)
            })
            .collect();
        ChainComplex::unchecked(ranks, diffs, true).expect("shapes agree by construction")
    }

    /// `pi_i`, reliable below the top level.
    pub fn homotopy_group(&self, i: usize) -> Result<FgAbGroup, SimplicialError> {
        if i >= self.top_level() {
            return Err(SimplicialError::Unreliable {
                degree: i,
                top: self.top_level(),
            });
        }
        Ok(self.normalized_chains().homology(i)?)
    }
}

/// Inverse Dold-Kan: level `n` is the sum over surjections `[n] -> [k]` of
/// `C_k`. For `theta : [m] -> [n]` and the summand of `sigma`, factor
/// `sigma theta` as a surjection followed by an injection `delta`; the
/// summand maps identically when `delta` is the identity, by the
/// differential when `delta` misses only 0, and to zero otherwise.
pub fn from_chains(c: &ChainComplex, top: usize) -> Result<SimplicialAbGroup, SimplicialError> {
    if c.top_degree() > top {
        return Err(SimplicialError::TooShort {
            degree: c.top_degree(),
            top,
        });
    }
    let summands: Vec<Vec<(Vec<usize>, usize, usize)>> = (0..=top)
        .map(|n| {
            let mut out = Vec::new();
            let mut offset = 0;
            for k in 0..=n.min(c.top_degree()) {
                for s in surjections(n, k) {
                    out.push((s, k, offset));
                    offset += c.rank(k);
                }
            }
            out
        })
        .collect();
    let ranks: Vec<usize> = summands.iter().map(|s| s.iter().map(|(_, k, _)| c.rank(*k)).sum()).collect();
    let dense: Vec<IntMatrix> = (1..=c.top_degree()).map(|k| c.differential(k).to_dense()).collect();
    let induced = |op: Op, n: usize| {
        let theta = cosimplicial(op, n);
        let m = theta.len() - 1;
        let mut out = IntMatrix::zeros(ranks[m], ranks[n]);
        for (sigma, k, off) in &summands[n] {
            let comp: Vec<usize> = theta.iter().map(|&t| sigma[t]).collect();
            let mut image = comp.clone();
            image.dedup();
            let tau: Vec<usize> = comp.iter().map(|v| image.iter().position(|x| x == v).expect("in image")).collect();
            let l = image.len() - 1;
            let target = summands[m].iter().find(|(s, kk, _)| *kk == l && *s == tau);
            let Some((_, _, toff)) = target else {
                continue;
            };
            if l == *k {
                for t in 0..c.rank(*k) {
                    out[(toff + t, off + t)] = BigInt::from(1);
                }
            } else if l + 1 == *k && image == (1..=*k).collect::<Vec<_>>() {
                let d = &dense[*k - 1];
                for r in 0..d.rows() {
                    for t in 0..d.cols() {
                        if !d[(r, t)].is_zero() {
                            out[(toff + r, off + t)] = d[(r, t)].clone();
                        }
                    }
                }
            }
        }
        out
    };
    let faces = (0..=top)
        .map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| induced(Op::D(i), n)).collect() })
        .collect();
    let degens = (0..top).map(|n| (0..=n).map(|j| induced(Op::S(j), n)).collect()).collect();
    SimplicialAbGroup::new(ranks, faces, degens)
}

/// Checks that `C` and the normalized chains of its simplicial image are
/// isomorphic as complexes, through the explicit map that puts `C_n` in the
/// summand of the identity surjection. Returns the first failing degree.
pub fn dold_kan_round_trip(c: &ChainComplex, top: usize) -> Result<(), SimplicialError> {
    let s = from_chains(c, top)?;
    s.validate()?;
    let n_top = top.min(c.top_degree());
    // coordinates of the identity summand inside the kernel basis
    let mut phis = Vec::new();
    for n in 0..=n_top {
        let offset: usize = (0..n).map(|k| surjections(n, k).len() * c.rank(k)).sum();
        let inclusion = IntMatrix::from_fn(s.rank(n), c.rank(n), |i, j| BigInt::from((i == offset + j) as i64));
        let phi = if n == 0 {
            inclusion
        } else {
            let stacked = (2..=n).fold(s.face(n, 1).clone(), |acc, i| acc.vstack(s.face(n, i)));
            let k = kernel(&stacked);
            let phi = k.coords.mul(&inclusion);
            if k.basis.mul(&phi) != inclusion {
                return Err(SimplicialError::RoundTrip { degree: n });
            }
            phi
        };
        if !phi.is_square() || !phi.is_unimodular() {
            return Err(SimplicialError::RoundTrip { degree: n });
        }
        phis.push(phi);
    }
    let nc = s.normalized_chains();
    for n in 1..=n_top {
        let lhs = dense_times_sparse(&IntMatrix::identity(nc.rank(n - 1)), nc.differential(n)).mul(&phis[n]);
        let rhs = phis[n - 1].mul(&c.differential(n).to_dense());
        if lhs != rhs {
            return Err(SimplicialError::RoundTrip { degree: n });
        }
    }
    Ok(())
}
