use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::Hash;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::abgroup::{abelian_from_table, cokernel_presentation, FgAbGroup, FiniteAbelian, IntMatrix};

pub const GROUP_SCHEMA_VERSION: u32 = 1;

/// A word in the generators of a presentation: `(generator, exponent)`.
pub type Word = Vec<(usize, i64)>;

/// Generators (as elements) and relator words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<usize>,
    pub labels: Vec<String>,
    pub relators: Vec<Word>,
}

/// A finite group given by its multiplication table. Element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    names: Option<Vec<String>>,
    presentation: Option<Presentation>,
}

impl FiniteGroup {
    /// Validates a row-major table: element 0 is the identity, every row and
    /// column is a permutation, and the product is associative.
    pub fn from_table(name: impl Into<String>, n: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        if n == 0 || table.len() != n * n {
            return Err(GroupError::TableShape { order: n, entries: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= n) {
            return Err(GroupError::EntryOutOfRange { entry: bad, order: n });
        }
        let t = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            if t(0, a) != a || t(a, 0) != a {
                return Err(GroupError::NotIdentity { element: a });
            }
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[t(a, b)] = true;
                col[t(b, a)] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return Err(GroupError::NotLatin { element: a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = t(a, b);
                for c in 0..n {
                    if t(ab, c) != t(a, t(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| t(a, b) == 0).expect("latin square has inverses") as u32)
            .collect();
        Ok(FiniteGroup {
            name: name.into(),
            n,
            table: table.into_iter().map(|x| x as u32).collect(),
            inv,
            names: None,
            presentation: None,
        })
    }

    /// The group generated by `gens` inside an ambient multiplication, with
    /// elements numbered in breadth-first order from the identity. Element
    /// names are shortest words in `labels`.
    pub fn from_closure<T: Clone + Eq + Hash>(
        name: impl Into<String>,
        identity: T,
        gens: &[T],
        labels: &[&str],
        mul: impl Fn(&T, &T) -> T,
    ) -> Self {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let x = mul(&elems[i], g);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    let mut w = words[i].clone();
                    w.push(s);
                    words.push(w);
                    queue.push_back(elems.len());
                    elems.push(x);
                }
            }
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&mul(a, b)]);
            }
        }
        let mut g = FiniteGroup::from_table(name, n, table).expect("closure of a group operation is a group");
        g.names = Some(words.iter().map(|w| word_name(w, labels)).collect());
        g
    }

    pub fn with_presentation(mut self, p: Presentation) -> Result<Self, GroupError> {
        if let Some(&bad) = p.generators.iter().find(|&&x| x >= self.n) {
            return Err(GroupError::EntryOutOfRange { entry: bad, order: self.n });
        }
        for (k, r) in p.relators.iter().enumerate() {
            if r.iter().any(|&(s, _)| s >= p.generators.len()) || self.eval_word(&p.generators, r) != 0 {
                return Err(GroupError::BadRelator { index: k });
            }
        }
        if self.generated(&p.generators).len() != self.n {
            return Err(GroupError::NotGenerating);
        }
        self.presentation = Some(p);
        Ok(self)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        (0..e.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_name(&self, a: usize) -> String {
        self.names.as_ref().map_or_else(|| a.to_string(), |v| v[a].clone())
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn eval_word(&self, gens: &[usize], w: &[(usize, i64)]) -> usize {
        w.iter().fold(0, |acc, &(s, e)| self.mul(acc, self.pow(gens[s], e)))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&x| seen[x]).collect()
    }

    /// Elements of the commutator subgroup, by closure.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let comms: BTreeSet<usize> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.generated(&comms.into_iter().collect::<Vec<_>>())
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|a| self.mul(z, a) == self.mul(a, z)))
            .collect()
    }

    pub fn is_normal(&self, elements: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &h in elements {
            member[h] = true;
        }
        (0..self.n).all(|g| elements.iter().all(|&h| member[self.mul(self.mul(g, h), self.inv(g))]))
    }

    /// `G / N` for a normal subgroup `N`, with the projection as an index map.
    /// Cosets are numbered by their smallest element, so the identity coset
    /// comes first.
    pub fn quotient(&self, normal: &[usize], name: impl Into<String>) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let mut coset = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if coset[g] == usize::MAX {
                for &h in normal {
                    coset[self.mul(g, h)] = reps.len();
                }
                reps.push(g);
            }
        }
        let m = reps.len();
        let table = (0..m * m).map(|k| coset[self.mul(reps[k / m], reps[k % m])]).collect();
        let mut q = FiniteGroup::from_table(name, m, table)?;
        if let Some(names) = &self.names {
            q.names = Some(reps.iter().map(|&r| names[r].clone()).collect());
        }
        Ok((q, coset))
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        if elements.is_empty() || elements.iter().any(|&x| x >= self.n) {
            return false;
        }
        let mut member = vec![false; self.n];
        for &h in elements {
            member[h] = true;
        }
        member[0] && elements.iter().all(|&a| elements.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    /// `G / [G, G]` with the log of every element in canonical coordinates.
    pub fn abelianization_data(&self) -> Abelianization {
        let k = self.commutator_subgroup();
        let (q, proj) = self.quotient(&k, "ab").expect("commutator subgroup is normal");
        let fa = abelian_from_table(q.order(), 0, |a, b| q.mul(a, b));
        let log = proj.iter().map(|&c| fa.log[c].clone()).collect();
        let generators = fa
            .generators
            .iter()
            .map(|&c| (0..self.n).find(|&g| proj[g] == c).expect("projection is onto"))
            .collect();
        Abelianization {
            group: fa.group,
            log,
            generators,
            commutator_order: k.len(),
        }
    }

    /// Structure of the abelian group itself; `None` if not abelian.
    pub fn as_abelian(&self) -> Option<FiniteAbelian> {
        self.is_abelian().then(|| abelian_from_table(self.n, 0, |a, b| self.mul(a, b)))
    }

    /// Abelianization read off the presentation's exponent-sum matrix.
    pub fn presentation_abelianization(&self) -> Option<FgAbGroup> {
        let p = self.presentation.as_ref()?;
        let k = p.generators.len();
        let mut m = IntMatrix::zeros(k, p.relators.len());
        for (j, r) in p.relators.iter().enumerate() {
            for &(s, e) in r {
                m[(s, j)] += BigInt::from(e);
            }
        }
        Some(cokernel_presentation(&m))
    }

    /// All subgroups, by closure of cyclic subgroups under joins. Each is a
    /// sorted element list; the list is sorted by order, then elements.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = (0..self.n).map(|g| self.generated(&[g])).collect();
        let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for g in 0..self.n {
                    if h.binary_search(&g).is_ok() {
                        continue;
                    }
                    let mut gens = h.clone();
                    gens.push(g);
                    let j = self.generated(&gens);
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Relabel elements by a permutation fixing 0: element `a` becomes
    /// `perm[a]`.
    pub fn relabeled(&self, perm: &[usize]) -> FiniteGroup {
        assert_eq!(perm[0], 0, "relabeling must fix the identity");
        let n = self.n;
        let mut back = vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            back[p] = a;
        }
        let table = (0..n * n).map(|k| perm[self.mul(back[k / n], back[k % n])]).collect();
        let mut g = FiniteGroup::from_table(self.name.clone(), n, table).expect("relabeling preserves group axioms");
        g.names = self.names.as_ref().map(|v| (0..n).map(|k| v[back[k]].clone()).collect());
        g.presentation = self.presentation.as_ref().map(|p| Presentation {
            generators: p.generators.iter().map(|&x| perm[x]).collect(),
            labels: p.labels.clone(),
            relators: p.relators.clone(),
        });
        g
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup, name: impl Into<String>) -> FiniteGroup {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let split = |x: usize| (x / n2, x % n2);
        let table = (0..n * n)
            .map(|k| {
                let (a1, a2) = split(k / n);
                let (b1, b2) = split(k % n);
                self.mul(a1, b1) * n2 + other.mul(a2, b2)
            })
            .collect();
        let mut g = FiniteGroup::from_table(name, n, table).expect("product of groups is a group");
        if let (Some(x), Some(y)) = (&self.names, &other.names) {
            g.names = Some(
                (0..n)
                    .map(|k| {
                        let (a, b) = split(k);
                        match (a, b) {
                            (0, 0) => "e".to_string(),
                            (_, 0) => x[a].clone(),
                            (0, _) => y[b].clone(),
                            _ => format!("{}{}", x[a], y[b]),
                        }
                    })
                    .collect(),
            );
        }
        if let (Some(p), Some(q)) = (&self.presentation, &other.presentation) {
            let k = p.generators.len();
            let mut generators: Vec<usize> = p.generators.iter().map(|&a| a * n2).collect();
            generators.extend(q.generators.iter().copied());
            let mut labels = p.labels.clone();
            labels.extend(q.labels.iter().cloned());
            let mut relators = p.relators.clone();
            relators.extend(q.relators.iter().map(|r| r.iter().map(|&(s, e)| (s + k, e)).collect()));
            for s in 0..k {
                for t in 0..q.generators.len() {
                    relators.push(vec![(s, 1), (k + t, 1), (s, -1), (k + t, -1)]);
                }
            }
            g = g
                .with_presentation(Presentation {
                    generators,
                    labels,
                    relators,
                })
                .expect("product presentation is valid");
        }
        g
    }

    pub fn to_json(&self) -> String {
        let doc = GroupDoc {
            schema_version: GROUP_SCHEMA_VERSION,
            name: self.name.clone(),
            order: self.n,
            table: self.table.iter().map(|&x| x as usize).collect(),
            names: self.names.clone(),
            presentation: self.presentation.clone(),
        };
        serde_json::to_string(&doc).expect("groups serialize")
    }

    pub fn from_json(s: &str) -> Result<FiniteGroup, GroupError> {
        let doc: GroupDoc = serde_json::from_str(s).map_err(|e| GroupError::Json(e.to_string()))?;
        if doc.schema_version != GROUP_SCHEMA_VERSION {
            return Err(GroupError::SchemaVersion(doc.schema_version));
        }
        let mut g = FiniteGroup::from_table(doc.name, doc.order, doc.table)?;
        if let Some(names) = doc.names {
            if names.len() != g.n {
                return Err(GroupError::TableShape {
                    order: g.n,
                    entries: names.len(),
                });
            }
            g.names = Some(names);
        }
        match doc.presentation {
            Some(p) => g.with_presentation(p),
            None => Ok(g),
        }
    }
}

/// `G^ab` with discrete logs.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub group: FgAbGroup,
    /// Canonical coordinates of the image of each element of `G`.
    pub log: Vec<Vec<BigInt>>,
    /// An element of `G` mapping to each canonical generator.
    pub generators: Vec<usize>,
    pub commutator_order: usize,
}

#[derive(Serialize, Deserialize)]
struct GroupDoc {
    schema_version: u32,
    name: String,
    order: usize,
    table: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    presentation: Option<Presentation>,
}

fn word_name(w: &[usize], labels: &[&str]) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        out.push_str(labels.get(w[i]).copied().unwrap_or("?"));
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}
