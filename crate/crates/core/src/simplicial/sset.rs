use serde::{Deserialize, Serialize};

use super::identities::{identities, target_level, Op};
use super::SimplicialError;
use crate::abgroup::SparseIntMatrix;
use crate::chain::ChainComplex;
use crate::grouphomology::FiniteGroup;
use crate::guard::SizeGuard;

pub const SSET_SCHEMA_VERSION: u32 = 1;

/// A pointed simplicial set truncated at level `N` with finitely many
/// simplices per level. Maps are index tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSimplicialSet {
    counts: Vec<usize>,
    /// `faces[n][i][x]` is `d_i x` for `x` in level `n`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][j][x]` is `s_j x` for `x` in level `n < N`.
    degens: Vec<Vec<Vec<usize>>>,
    /// Basepoint in every level.
    basepoint: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SsetDoc {
    schema_version: u32,
    #[serde(flatten)]
    set: FiniteSimplicialSet,
}

impl FiniteSimplicialSet {
    pub fn new(
        counts: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
        basepoint: Vec<usize>,
    ) -> Result<Self, SimplicialError> {
        let top = counts.len().checked_sub(1).ok_or(SimplicialError::Empty)?;
        if faces.len() != top + 1 || degens.len() != top || basepoint.len() != top + 1 {
            return Err(SimplicialError::MapCount { level: top });
        }
        for n in 0..=top {
            if basepoint[n] >= counts[n] {
                return Err(SimplicialError::MapShape { level: n });
            }
            let want = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != want {
                return Err(SimplicialError::MapCount { level: n });
            }
            for f in &faces[n] {
                if f.len() != counts[n] || f.iter().any(|&y| y >= counts[n - 1]) {
                    return Err(SimplicialError::MapShape { level: n });
                }
            }
            if n < top {
                if degens[n].len() != n + 1 {
                    return Err(SimplicialError::MapCount { level: n });
                }
                for s in &degens[n] {
                    if s.len() != counts[n] || s.iter().any(|&y| y >= counts[n + 1]) {
                        return Err(SimplicialError::MapShape { level: n });
                    }
                }
            }
        }
        Ok(FiniteSimplicialSet {
            counts,
            faces,
            degens,
            basepoint,
        })
    }

    /// Builds every table from functions on indices.
    pub fn from_fns(
        top: usize,
        count: impl Fn(usize) -> usize,
        face: impl Fn(usize, usize, usize) -> usize,
        degen: impl Fn(usize, usize, usize) -> usize,
        basepoint: impl Fn(usize) -> usize,
    ) -> Result<Self, SimplicialError> {
        let counts: Vec<usize> = (0..=top).map(&count).collect();
        let faces = (0..=top)
            .map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| (0..counts[n]).map(|x| face(n, i, x)).collect()).collect() })
            .collect();
        let degens = (0..top).map(|n| (0..=n).map(|j| (0..counts[n]).map(|x| degen(n, j, x)).collect()).collect()).collect();
        Self::new(counts, faces, degens, (0..=top).map(basepoint).collect())
    }

    /// One simplex in every level.
    pub fn point(top: usize) -> Self {
        Self::from_fns(top, |_| 1, |_, _, _| 0, |_, _, _| 0, |_| 0).expect("point")
    }

    /// `Delta[1] / boundary`: level `n` holds the basepoint (index 0) and the
    /// maps `[n] -> [1]` with `a` zeros for `1 <= a <= n` (index `a`).
    pub fn circle(top: usize) -> Self {
        Self::wedge_of_circles(1, top)
    }

    /// Wedge of `k` circles sharing the basepoint; simplex `(c, a)` of copy
    /// `c` has index `1 + c n + (a - 1)` in level `n`.
    pub fn wedge_of_circles(k: usize, top: usize) -> Self {
        let idx = |n: usize, c: usize, a: usize| if a == 0 || a == n + 1 { 0 } else { 1 + c * n + (a - 1) };
        let split = |n: usize, x: usize| ((x - 1) / n, (x - 1) % n + 1);
        Self::from_fns(
            top,
            |n| 1 + k * n,
            |n, i, x| {
                if x == 0 {
                    return 0;
                }
                let (c, a) = split(n, x);
                // the coface skipping i removes a zero exactly when i < a
                let a2 = if i < a { a - 1 } else { a };
                idx(n - 1, c, a2)
            },
            |n, j, x| {
                if x == 0 {
                    return 0;
                }
                let (c, a) = split(n, x);
                let a2 = if j < a { a + 1 } else { a };
                idx(n + 1, c, a2)
            },
            |_| 0,
        )
        .expect("wedge of circles")
    }

    pub fn top_level(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &[usize] {
        &self.degens[n][j]
    }

    pub fn basepoint(&self, n: usize) -> usize {
        self.basepoint[n]
    }

    /// Overwrites one face table entry without revalidating.
    pub fn set_face(&mut self, n: usize, i: usize, x: usize, y: usize) {
        self.faces[n][i][x] = y;
    }

    fn apply(&self, ops: &[Op], level: usize, x: usize) -> usize {
        let mut l = level;
        let mut y = x;
        for &op in ops.iter().rev() {
            y = match op {
                Op::D(i) => self.faces[l][i][y],
                Op::S(j) => self.degens[l][j][y],
            };
            l = target_level(op, l);
        }
        y
    }

    /// Every simplicial identity on every simplex, then closure of the
    /// basepoint.
    pub fn validate(&self) -> Result<(), SimplicialError> {
        for id in identities(self.top_level()) {
            if (0..self.counts[id.level]).any(|x| self.apply(&id.lhs, id.level, x) != self.apply(&id.rhs, id.level, x)) {
                return Err(SimplicialError::Identity {
                    identity: id.lhs_name(),
                    full: id.name(),
                    level: id.level,
                });
            }
        }
        for n in 0..=self.top_level() {
            let b = self.basepoint[n];
            let faces_ok = n == 0 || self.faces[n].iter().all(|f| f[b] == self.basepoint[n - 1]);
            let degens_ok = n == self.top_level() || self.degens[n].iter().all(|s| s[b] == self.basepoint[n + 1]);
            if !faces_ok || !degens_ok {
                return Err(SimplicialError::Basepoint { level: n });
            }
        }
        Ok(())
    }

    /// Flags of simplices in the image of some degeneracy.
    pub fn degenerate(&self, n: usize) -> Vec<bool> {
        let mut out = vec![false; self.counts[n]];
        if n > 0 {
            for s in &self.degens[n - 1] {
                for &y in s {
                    out[y] = true;
                }
            }
        }
        out
    }

    /// Reduced normalized chains: free on nondegenerate simplices other than
    /// the basepoint, with the alternating face sum. Degrees `0..=top`.
    pub fn reduced_chains(&self) -> ChainComplex {
        self.chains(true)
    }

    /// Normalized chains on all nondegenerate simplices.
    pub fn chains(&self, reduced: bool) -> ChainComplex {
        let top = self.top_level();
        let cells: Vec<Vec<usize>> = (0..=top)
            .map(|n| {
                let deg = self.degenerate(n);
                (0..self.counts[n]).filter(|&x| !deg[x] && !(reduced && x == self.basepoint[n])).collect()
            })
            .collect();
        let position: Vec<Vec<usize>> = (0..=top)
            .map(|n| {
                let mut p = vec![usize::MAX; self.counts[n]];
                for (k, &x) in cells[n].iter().enumerate() {
                    p[x] = k;
                }
                p
            })
            .collect();
        let diffs = (1..=top)
            .map(|n| {
                let cols = cells[n]
                    .iter()
                    .map(|&x| {
                        (0..=n)
                            .filter_map(|i| {
                                let y = self.faces[n][i][x];
                                let r = position[n - 1][y];
                                (r != usize::MAX).then_some((r, if i % 2 == 0 { 1 } else { -1 }))
                            })
                            .collect()
                    })
                    .collect();
                SparseIntMatrix::from_columns(cells[n - 1].len(), cols)
            })
            .collect();
        let ranks = cells.iter().map(Vec::len).collect();
        ChainComplex::unchecked(ranks, diffs, true).expect("shapes agree by construction")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SsetDoc {
            schema_version: SSET_SCHEMA_VERSION,
            set: self.clone(),
        })
        .expect("simplicial sets serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, SimplicialError> {
        let doc: SsetDoc = serde_json::from_str(s).map_err(|e| SimplicialError::Json(e.to_string()))?;
        if doc.schema_version != SSET_SCHEMA_VERSION {
            return Err(SimplicialError::SchemaVersion(doc.schema_version));
        }
        let x = doc.set;
        Self::new(x.counts, x.faces, x.degens, x.basepoint)
    }
}

/// `BG` through level `top`: level `n` is `G^n`, tuples indexed base `|G|`
/// with the first entry most significant. Outer faces drop an end, inner
/// faces multiply neighbours, degeneracies insert the identity.
pub fn bar_construction(g: &FiniteGroup, top: usize, guard: SizeGuard) -> Result<FiniteSimplicialSet, SimplicialError> {
    let order = g.order();
    guard.check(format!("bar construction of {} at level {top}", g.name()), (order as u128).pow(top as u32))?;
    let idx = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * order + x);
    let tuple = |n: usize, mut x: usize| {
        let mut t = vec![0; n];
        for k in (0..n).rev() {
            t[k] = x % order;
            x /= order;
        }
        t
    };
    FiniteSimplicialSet::from_fns(
        top,
        |n| order.pow(n as u32),
        |n, i, x| {
            let t = tuple(n, x);
            if i == 0 {
                idx(&t[1..])
            } else if i == n {
                idx(&t[..n - 1])
            } else {
                let mut f = t[..i - 1].to_vec();
                f.push(g.mul(t[i - 1], t[i]));
                f.extend_from_slice(&t[i + 1..]);
                idx(&f)
            }
        },
        |n, j, x| {
            let mut t = tuple(n, x);
            t.insert(j, 0);
            idx(&t)
        },
        |_| 0,
    )
}
