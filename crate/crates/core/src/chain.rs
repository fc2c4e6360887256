//! Connective chain complexes of free abelian groups and their homology.
//!
//! Degrees are homological and start at 0. A complex carries its top degree
//! explicitly; when it is a truncation of a longer complex the homology in
//! the top degree is missing its incoming differential and is reported as
//! unreliable.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abgroup::{kernel, AbGroupError, AbHom, Cokernel, FgAbGroup, IntMatrix, SparseIntMatrix};

pub const CHAIN_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("differential d_{degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("d_{} d_{} is not zero (failing degree {degree})", .degree - 1, .degree)]
    NotAComplex { degree: usize },
    #[error("degree {degree} is outside 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("expected {expected} differentials for {ranks} components, found {found}")]
    DifferentialCount {
        ranks: usize,
        expected: usize,
        found: usize,
    },
    #[error("unsupported chain complex schema version {0}")]
    SchemaVersion(u32),
    #[error(transparent)]
    Hom(#[from] AbGroupError),
}

/// `C_0 <- C_1 <- ... <- C_top` with `C_n = Z^{ranks[n]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `diffs[n - 1]` is `d_n : C_n -> C_{n-1}`.
    diffs: Vec<SparseIntMatrix>,
    truncated: bool,
    notes: Vec<String>,
}

impl ChainComplex {
    /// Builds and validates a complex from dense differentials.
    pub fn new(ranks: Vec<usize>, diffs: Vec<IntMatrix>, truncated: bool) -> Result<Self, ChainError> {
        let diffs = diffs.iter().map(SparseIntMatrix::from_dense).collect();
        Self::from_sparse(ranks, diffs, truncated)
    }

    pub fn from_sparse(ranks: Vec<usize>, diffs: Vec<SparseIntMatrix>, truncated: bool) -> Result<Self, ChainError> {
        let c = Self::unchecked(ranks, diffs, truncated)?;
        c.validate()?;
        Ok(c)
    }

    /// Checks shapes but not `d d = 0`. For constructions that are complexes
    /// by design; `validate` remains available.
    pub fn unchecked(ranks: Vec<usize>, diffs: Vec<SparseIntMatrix>, truncated: bool) -> Result<Self, ChainError> {
        let ranks = if ranks.is_empty() { vec![0] } else { ranks };
        if diffs.len() + 1 != ranks.len() {
            return Err(ChainError::DifferentialCount {
                ranks: ranks.len(),
                expected: ranks.len() - 1,
                found: diffs.len(),
            });
        }
        for (i, d) in diffs.iter().enumerate() {
            let n = i + 1;
            let expected = (ranks[n - 1], ranks[n]);
            if (d.rows(), d.cols()) != expected {
                return Err(ChainError::ShapeMismatch {
                    degree: n,
                    expected,
                    found: (d.rows(), d.cols()),
                });
            }
        }
        Ok(ChainComplex {
            ranks,
            diffs,
            truncated,
            notes: Vec::new(),
        })
    }

    /// The zero complex through `top`.
    pub fn zero(top: usize) -> Self {
        Self::concentrated(0, 0, top)
    }

    /// `Z^rank` in a single degree, zero elsewhere through `top`.
    pub fn concentrated(degree: usize, rank: usize, top: usize) -> Self {
        let top = top.max(degree);
        let mut ranks = vec![0; top + 1];
        ranks[degree] = rank;
        let diffs = (1..=top).map(|n| SparseIntMatrix::zeros(ranks[n - 1], ranks[n])).collect();
        ChainComplex {
            ranks,
            diffs,
            truncated: false,
            notes: Vec::new(),
        }
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `d_n` for `1 <= n <= top`.
    pub fn differential(&self, n: usize) -> &SparseIntMatrix {
        &self.diffs[n - 1]
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Metadata recorded by operations that dropped or replaced degrees.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Homology at `n` is trustworthy unless `n` is the top of a truncation.
    pub fn is_reliable(&self, n: usize) -> bool {
        n < self.top_degree() || !self.truncated
    }

    /// Shapes and `d_n d_{n+1} = 0`; the error names degree `n + 1`.
    pub fn validate(&self) -> Result<(), ChainError> {
        for (i, d) in self.diffs.iter().enumerate() {
            let n = i + 1;
            let expected = (self.ranks[n - 1], self.ranks[n]);
            if (d.rows(), d.cols()) != expected {
                return Err(ChainError::ShapeMismatch {
                    degree: n,
                    expected,
                    found: (d.rows(), d.cols()),
                });
            }
        }
        for n in 1..self.diffs.len() {
            if !self.diffs[n - 1].mul(&self.diffs[n]).is_zero() {
                return Err(ChainError::NotAComplex { degree: n + 1 });
            }
        }
        Ok(())
    }

    fn check_degree(&self, n: usize) -> Result<(), ChainError> {
        if n > self.top_degree() {
            return Err(ChainError::DegreeOutOfRange {
                degree: n,
                top: self.top_degree(),
            });
        }
        Ok(())
    }

    fn diff_factors(&self, n: usize) -> Vec<BigInt> {
        if n == 0 || n > self.top_degree() {
            Vec::new()
        } else {
            self.diffs[n - 1].invariant_factors()
        }
    }

    /// `H_n = ker d_n / im d_{n+1}` from the ranks of `d_n` and the
    /// invariant factors of `d_{n+1}`.
    pub fn homology(&self, n: usize) -> Result<FgAbGroup, ChainError> {
        self.check_degree(n)?;
        let (rank_in, out) = rayon::join(|| self.diff_factors(n).len(), || self.diff_factors(n + 1));
        Ok(assemble(self.ranks[n], rank_in, out))
    }

    /// Homology in every degree, each differential reduced once.
    pub fn homology_all(&self) -> Vec<FgAbGroup> {
        let factors: Vec<Vec<BigInt>> = (0..=self.top_degree() + 1).into_par_iter().map(|n| self.diff_factors(n)).collect();
        (0..=self.top_degree())
            .map(|n| assemble(self.ranks[n], factors[n].len(), factors[n + 1].clone()))
            .collect()
    }

    /// Homology at `n` with explicit cycles: a saturated basis of `ker d_n`
    /// from its Smith form, then the cokernel of `d_{n+1}` written in that
    /// basis.
    pub fn homology_with_basis(&self, n: usize) -> Result<HomologyBasis, ChainError> {
        self.check_degree(n)?;
        let c = self.ranks[n];
        let (basis, coords) = if n == 0 || self.diffs[n - 1].is_zero() {
            (IntMatrix::identity(c), IntMatrix::identity(c))
        } else {
            let k = kernel(&self.diffs[n - 1].to_dense());
            (k.basis, k.coords)
        };
        let boundaries = if n < self.top_degree() {
            dense_times_sparse(&coords, &self.diffs[n])
        } else {
            IntMatrix::zeros(coords.rows(), 0)
        };
        let cokernel = Cokernel::of(&boundaries);
        let cycles = IntMatrix::from_fn(c, cokernel.group.ngens(), |i, j| {
            let lift = cokernel.lift(j);
            (0..basis.cols()).map(|t| &basis[(i, t)] * &lift[t]).sum()
        });
        Ok(HomologyBasis {
            degree: n,
            group: cokernel.group.clone(),
            cycles,
            kernel_coords: coords,
            cokernel,
        })
    }

    /// Reindexes so that new degree `n` holds old degree `n - k`; `k = -1`
    /// moves degree `i + 1` to degree `i`. Degrees pushed below zero are
    /// dropped. When the dropped differential out of the new degree 0 is
    /// nonzero, that component is replaced by its kernel, so homology in
    /// every retained degree is unchanged. Drops are recorded in `notes`.
    pub fn shift(&self, k: i64) -> ChainComplex {
        if k >= 0 {
            let k = k as usize;
            let mut ranks = vec![0; k];
            ranks.extend_from_slice(&self.ranks);
            let mut diffs: Vec<SparseIntMatrix> = (1..=k).map(|n| SparseIntMatrix::zeros(ranks[n - 1], ranks[n])).collect();
            diffs.extend(self.diffs.iter().cloned());
            let mut out = ChainComplex {
                ranks,
                diffs,
                truncated: self.truncated,
                notes: self.notes.clone(),
            };
            if k > 0 {
                out.notes.push(format!("shifted by {k}"));
            }
            return out;
        }
        let m = k.unsigned_abs() as usize;
        let mut notes = self.notes.clone();
        if m > self.top_degree() {
            notes.push(format!("shift by {k} dropped every degree"));
            let mut z = ChainComplex::zero(0);
            z.truncated = self.truncated;
            z.notes = notes;
            return z;
        }
        notes.push(format!("shift by {k} dropped old degrees 0..{m}"));
        let mut ranks = self.ranks[m..].to_vec();
        let mut diffs: Vec<SparseIntMatrix> = self.diffs[m..].to_vec();
        if m >= 1 && !self.diffs[m - 1].is_zero() {
            let kb = kernel(&self.diffs[m - 1].to_dense());
            ranks[0] = kb.dim();
            if let Some(d1) = diffs.first_mut() {
                *d1 = SparseIntMatrix::from_dense(&dense_times_sparse(&kb.coords, d1));
            }
            notes.push("new degree 0 replaced by the kernel of the dropped differential".to_string());
        }
        ChainComplex {
            ranks,
            diffs,
            truncated: self.truncated,
            notes,
        }
    }

    /// Connective cover. Every complex here already lives in degrees
    /// `>= 0`, so this checks the complex and returns it unchanged.
    pub fn connective_truncate(&self) -> ChainComplex {
        debug_assert!(self.validate().is_ok());
        self.clone()
    }

    /// Degreewise direct sum; the shorter complex is padded with zeros.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let top = self.top_degree().max(other.top_degree());
        let ranks: Vec<usize> = (0..=top).map(|n| self.rank(n) + other.rank(n)).collect();
        let block = |c: &ChainComplex, n: usize| {
            if n <= c.top_degree() {
                c.diffs[n - 1].clone()
            } else {
                SparseIntMatrix::zeros(c.rank(n - 1), c.rank(n))
            }
        };
        let diffs = (1..=top)
            .map(|n| {
                let a = block(self, n);
                let b = block(other, n);
                let mut cols: Vec<Vec<(usize, BigInt)>> = a.columns().to_vec();
                cols.extend(b.columns().iter().map(|c| c.iter().map(|(i, v)| (i + a.rows(), v.clone())).collect()));
                SparseIntMatrix::from_big_columns(a.rows() + b.rows(), cols)
            })
            .collect();
        ChainComplex {
            ranks,
            diffs,
            truncated: self.truncated || other.truncated,
            notes: Vec::new(),
        }
    }

    /// Alternating sum of component ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    pub fn to_json(&self) -> String {
        let doc = ChainDoc {
            schema_version: CHAIN_SCHEMA_VERSION,
            top_degree: self.top_degree(),
            truncated: self.truncated,
            ranks: self.ranks.clone(),
            differentials: self.diffs.iter().map(SparseIntMatrix::to_dense).collect(),
            notes: self.notes.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("chain complexes serialize")
    }

    pub fn from_json(s: &str) -> Result<ChainComplex, ChainJsonError> {
        let doc: ChainDoc = serde_json::from_str(s)?;
        if doc.schema_version != CHAIN_SCHEMA_VERSION {
            return Err(ChainError::SchemaVersion(doc.schema_version).into());
        }
        if doc.ranks.len() != doc.top_degree + 1 {
            return Err(ChainError::DifferentialCount {
                ranks: doc.ranks.len(),
                expected: doc.top_degree,
                found: doc.differentials.len(),
            }
            .into());
        }
        let mut c = ChainComplex::new(doc.ranks, doc.differentials, doc.truncated)?;
        c.notes = doc.notes;
        Ok(c)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ChainJsonError {
    #[error("malformed chain complex document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] ChainError),
}

#[derive(Serialize, Deserialize)]
struct ChainDoc {
    schema_version: u32,
    top_degree: usize,
    truncated: bool,
    ranks: Vec<usize>,
    differentials: Vec<IntMatrix>,
    #[serde(default)]
    notes: Vec<String>,
}

fn assemble(c: usize, rank_in: usize, out: Vec<BigInt>) -> FgAbGroup {
    let free = c - rank_in - out.len();
    FgAbGroup::from_cyclic_factors(free, out)
}

/// `a * s` for dense `a` and sparse `s`.
pub fn dense_times_sparse(a: &IntMatrix, s: &SparseIntMatrix) -> IntMatrix {
    assert_eq!(a.cols(), s.rows(), "shape mismatch in product");
    let mut out = IntMatrix::zeros(a.rows(), s.cols());
    for (j, col) in s.columns().iter().enumerate() {
        for (k, v) in col {
            for i in 0..a.rows() {
                let x = &a[(i, *k)];
                if !x.is_zero() {
                    out[(i, j)] += x * v;
                }
            }
        }
    }
    out
}

/// Homology in one degree with representative cycles.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: usize,
    pub group: FgAbGroup,
    /// `C_n x ngens`; column `j` is a cycle representing canonical
    /// generator `j`.
    pub cycles: IntMatrix,
    kernel_coords: IntMatrix,
    cokernel: Cokernel,
}

impl HomologyBasis {
    /// Canonical coordinates of the class of a cycle.
    pub fn class_of(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.cokernel.coords(&self.kernel_coords.mul_vec(z))
    }

    pub fn cycle(&self, j: usize) -> Vec<BigInt> {
        self.cycles.col(j)
    }
}

/// The map on homology induced by a chain-level map in one degree.
pub fn induced_map(
    source: &HomologyBasis,
    target: &HomologyBasis,
    f: impl Fn(&[BigInt]) -> Vec<BigInt> + Sync,
) -> Result<AbHom, ChainError> {
    let cols: Vec<Vec<BigInt>> = (0..source.group.ngens())
        .into_par_iter()
        .map(|j| target.class_of(&f(&source.cycle(j))))
        .collect();
    let m = IntMatrix::from_fn(target.group.ngens(), source.group.ngens(), |i, j| cols[j][i].clone());
    Ok(AbHom::new(source.group.clone(), target.group.clone(), m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> ChainComplex {
        ChainComplex::new(vec![1, 1], vec![IntMatrix::from_rows(&[[2]])], false).unwrap()
    }

    #[test]
    fn multiplication_by_two() {
        let c = two();
        assert_eq!(c.homology(0).unwrap(), FgAbGroup::cyclic(2));
        assert_eq!(c.homology(1).unwrap(), FgAbGroup::zero());
        assert_eq!(c.homology(2), Err(ChainError::DegreeOutOfRange { degree: 2, top: 1 }));
    }

    #[test]
    fn zero_map_complex_is_valid() {
        let c = ChainComplex::new(vec![1, 1], vec![IntMatrix::zeros(1, 1)], false).unwrap();
        assert_eq!(c.homology_all(), vec![FgAbGroup::free(1), FgAbGroup::free(1)]);
    }

    #[test]
    fn failing_square_is_reported_at_upper_degree() {
        let d1 = IntMatrix::from_rows(&[[1]]);
        let d2 = IntMatrix::from_rows(&[[1]]);
        let err = ChainComplex::new(vec![1, 1, 1], vec![d1, d2], false).unwrap_err();
        assert_eq!(err, ChainError::NotAComplex { degree: 2 });
    }

    #[test]
    fn shapes_are_checked() {
        let err = ChainComplex::new(vec![1, 2], vec![IntMatrix::zeros(1, 1)], false).unwrap_err();
        assert!(matches!(err, ChainError::ShapeMismatch { degree: 1, .. }));
    }

    #[test]
    fn basis_route_matches_rank_route() {
        // Z <-(2 0)- Z^2 <-(0,1)^T- Z, H_1 = Z / ... free part killed
        let d1 = IntMatrix::from_rows(&[[2, 0]]);
        let d2 = IntMatrix::from_rows(&[[0], [3]]);
        let c = ChainComplex::new(vec![1, 2, 1], vec![d1, d2], false).unwrap();
        for n in 0..=2 {
            assert_eq!(c.homology_with_basis(n).unwrap().group, c.homology(n).unwrap());
        }
        assert_eq!(c.homology(1).unwrap(), FgAbGroup::cyclic(3));
    }

    #[test]
    fn shift_down_and_back() {
        let c = ChainComplex::concentrated(2, 1, 2);
        let s = c.shift(-1);
        assert_eq!(s.ranks(), &[0, 1]);
        assert_eq!(s.homology(1).unwrap(), FgAbGroup::free(1));
        let back = s.shift(1);
        assert_eq!(back.ranks()[1..], c.ranks()[1..]);
        assert_eq!(c.shift(0), c);
    }

    #[test]
    fn shift_replaces_degree_zero_by_kernel() {
        // Z <-2- Z <-0- Z, shifted down by one keeps H_1 = 0 and H_2 = Z
        let c = ChainComplex::new(vec![1, 1, 1], vec![IntMatrix::from_rows(&[[2]]), IntMatrix::zeros(1, 1)], false)
            .unwrap();
        let s = c.shift(-1);
        assert_eq!(s.homology(0).unwrap(), c.homology(1).unwrap());
        assert_eq!(s.homology(1).unwrap(), c.homology(2).unwrap());
        assert!(s.notes().iter().any(|n| n.contains("kernel")));
    }

    #[test]
    fn json_round_trip() {
        let c = two();
        let back = ChainComplex::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(ChainComplex::from_json("{\"schema_version\": 9}").is_err());
    }

    #[test]
    fn induced_map_of_multiplication() {
        let c = ChainComplex::new(vec![1, 1], vec![IntMatrix::from_rows(&[[4]])], false).unwrap();
        let h = c.homology_with_basis(0).unwrap();
        let f = induced_map(&h, &h, |z| z.iter().map(|x| x * 3).collect()).unwrap();
        assert_eq!(f.matrix(), &IntMatrix::from_rows(&[[3]]));
    }
}
