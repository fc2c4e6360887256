//! Quotients and torsion of finite abelian groups given by multiplication
//! tables, with the reduction maps between levels.

use num_bigint::BigInt;
use serde::Serialize;

use crate::abgroup::{abelian_from_table, AbHom, FgAbGroup, IntMatrix};

/// A finite abelian group as a table on `0..size`.
pub struct Table<'a> {
    pub size: usize,
    pub identity: usize,
    pub mul: &'a (dyn Fn(usize, usize) -> usize + Sync),
}

impl Table<'_> {
    pub fn pow(&self, x: usize, n: u64) -> usize {
        (0..n).fold(self.identity, |acc, _| (self.mul)(acc, x))
    }

    /// `A / A^n` with the coset of every element.
    pub fn quotient_by_powers(&self, n: u64) -> TableQuotient {
        let mut powers: Vec<usize> = (0..self.size).map(|x| self.pow(x, n)).collect();
        powers.sort_unstable();
        powers.dedup();
        let rep: Vec<usize> = (0..self.size)
            .map(|x| powers.iter().map(|&p| (self.mul)(x, p)).min().expect("nonempty"))
            .collect();
        let mut reps: Vec<usize> = rep.clone();
        reps.sort_unstable();
        reps.dedup();
        let coset: Vec<usize> = rep.iter().map(|r| reps.binary_search(r).expect("listed")).collect();
        let k = reps.len();
        let fa = abelian_from_table(k, coset[self.identity], |a, b| coset[(self.mul)(reps[a], reps[b])]);
        TableQuotient {
            group: fa.group,
            log: fa.log,
            coset,
            generators: fa.generators.iter().map(|&c| reps[c]).collect(),
        }
    }

    /// `A[n]` with its elements.
    pub fn torsion(&self, n: u64) -> (FgAbGroup, Vec<usize>) {
        let elems: Vec<usize> = (0..self.size).filter(|&x| self.pow(x, n) == self.identity).collect();
        let pos = |x: usize| elems.binary_search(&x).expect("closed under products");
        let id = pos(self.identity);
        let fa = abelian_from_table(elems.len(), id, |a, b| pos((self.mul)(elems[a], elems[b])));
        let gens = fa.generators.iter().map(|&g| elems[g]).collect();
        (fa.group, gens)
    }
}

pub struct TableQuotient {
    pub group: FgAbGroup,
    /// Canonical coordinates of each coset.
    pub log: Vec<Vec<BigInt>>,
    /// Coset index of each element.
    pub coset: Vec<usize>,
    /// Elements realizing the canonical generators.
    pub generators: Vec<usize>,
}

impl TableQuotient {
    pub fn log_of(&self, x: usize) -> &[BigInt] {
        &self.log[self.coset[x]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub from: u64,
    pub to: u64,
    pub map: AbHom,
}

/// The system `A / A^n` over `levels` with reduction maps for every pair
/// `n | m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseSystem {
    pub levels: Vec<u64>,
    pub values: Vec<FgAbGroup>,
    pub transitions: Vec<Transition>,
    /// Whether composites of transitions agree with the direct transitions.
    pub compatible: bool,
    /// The top level maps isomorphically onto its largest proper divisor
    /// among the levels.
    pub stabilized: bool,
    pub limit: Option<FgAbGroup>,
}

pub fn mod_powers_system(t: &Table<'_>, levels: &[u64]) -> InverseSystem {
    let mut levels = levels.to_vec();
    levels.sort_unstable();
    levels.dedup();
    let quots: Vec<TableQuotient> = levels.iter().map(|&n| t.quotient_by_powers(n)).collect();
    let mut transitions = Vec::new();
    for (i, &m) in levels.iter().enumerate() {
        for (j, &n) in levels.iter().enumerate() {
            if n < m && m % n == 0 {
                let (src, dst) = (&quots[i], &quots[j]);
                let mat = IntMatrix::from_fn(dst.group.ngens(), src.group.ngens(), |r, c| dst.log_of(src.generators[c])[r].clone());
                let map = AbHom::new(src.group.clone(), dst.group.clone(), mat).expect("reduction is a homomorphism");
                transitions.push(Transition { from: m, to: n, map });
            }
        }
    }
    let find = |m: u64, n: u64| transitions.iter().find(|t| t.from == m && t.to == n).map(|t| &t.map);
    let mut compatible = true;
    for a in &transitions {
        for b in &transitions {
            if a.to == b.from {
                let direct = find(a.from, b.to).expect("divisibility is transitive");
                compatible &= b.map.compose(&a.map).as_ref() == Ok(direct);
            }
        }
    }
    let top = *levels.last().expect("at least one level");
    let below = levels.iter().rev().find(|&&n| n < top && top.is_multiple_of(n)).copied();
    let stabilized = below.and_then(|n| find(top, n)).is_some_and(AbHom::is_isomorphism);
    InverseSystem {
        values: quots.iter().map(|q| q.group.clone()).collect(),
        limit: stabilized.then(|| quots.last().expect("nonempty").group.clone()),
        levels,
        transitions,
        compatible,
        stabilized,
    }
}
