//! All groups of order at most 16, one per isomorphism class, each with a
//! presentation.

use std::sync::OnceLock;

use super::finite::{FiniteGroup, Presentation, Word};

/// One catalog group with its small-group identifier `(order, index)`.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub id: (usize, usize),
    pub group: FiniteGroup,
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let name = if n == 1 { "C1".to_string() } else { format!("C{n}") };
    let gens: &[usize] = if n == 1 { &[] } else { &[1] };
    let g = FiniteGroup::from_closure(name, 0usize, gens, &["a"], |x, y| (x + y) % n);
    if n == 1 {
        return g;
    }
    g.with_presentation(Presentation {
        generators: vec![1],
        labels: vec!["a".into()],
        relators: vec![vec![(0, n as i64)]],
    })
    .expect("cyclic presentation")
}

/// `<a, b | a^m, b^n = a^s, b a b^-1 = a^r>`, elements `a^i b^j`.
pub fn metacyclic(name: &str, m: usize, n: usize, r: usize, s: usize) -> FiniteGroup {
    let mul = |x: &(usize, usize), y: &(usize, usize)| {
        let twist = (0..x.1).fold(1, |acc, _| acc * r % m);
        let mut i = x.0 + twist * y.0;
        let mut j = x.1 + y.1;
        if j >= n {
            j -= n;
            i += s;
        }
        (i % m, j)
    };
    let g = FiniteGroup::from_closure(name, (0, 0), &[(1 % m, 0), (0, 1 % n)], &["a", "b"], mul);
    assert_eq!(g.order(), m * n, "metacyclic parameters do not define a group of order m n");
    let (a, b) = (0usize, 1usize);
    let p = Presentation {
        generators: vec![1, 2],
        labels: vec!["a".into(), "b".into()],
        relators: vec![
            vec![(a, m as i64)],
            vec![(b, n as i64), (a, -(s as i64))],
            vec![(b, 1), (a, 1), (b, -1), (a, -(r as i64))],
        ],
    };
    g.with_presentation(p).expect("metacyclic presentation")
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(&format!("D{n}"), n, 2, n - 1, 0)
}

/// `N x| C_n` with `N = Z/m_1 + ... + Z/m_k`; the generator `c` of `C_n`
/// acts by the integer matrix `phi` (column `i` is the image of `e_i`).
pub fn abelian_semidirect(name: &str, moduli: &[usize], phi: &[Vec<usize>], n: usize) -> FiniteGroup {
    let k = moduli.len();
    let act = |v: &[usize], times: usize| {
        let mut v = v.to_vec();
        for _ in 0..times {
            v = (0..k).map(|row| (0..k).map(|i| phi[i][row] * v[i]).sum::<usize>() % moduli[row]).collect();
        }
        v
    };
    let mul = |x: &(Vec<usize>, usize), y: &(Vec<usize>, usize)| {
        let w = act(&y.0, x.1);
        let v: Vec<usize> = (0..k).map(|i| (x.0[i] + w[i]) % moduli[i]).collect();
        (v, (x.1 + y.1) % n)
    };
    let mut gens: Vec<(Vec<usize>, usize)> = (0..k)
        .map(|i| {
            let mut e = vec![0; k];
            e[i] = 1;
            (e, 0)
        })
        .collect();
    gens.push((vec![0; k], 1));
    let labels: Vec<String> = ["x", "y", "z", "w"].iter().take(k).map(|s| s.to_string()).chain(["c".to_string()]).collect();
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let g = FiniteGroup::from_closure(name, (vec![0; k], 0), &gens, &label_refs, mul);
    assert_eq!(g.order(), moduli.iter().product::<usize>() * n, "action does not define a semidirect product");
    let c = k;
    let mut relators: Vec<Word> = Vec::new();
    for (i, &m) in moduli.iter().enumerate().take(k) {
        relators.push(vec![(i, m as i64)]);
        for j in i + 1..k {
            relators.push(vec![(i, 1), (j, 1), (i, -1), (j, -1)]);
        }
    }
    relators.push(vec![(c, n as i64)]);
    for (i, col) in phi.iter().enumerate() {
        let mut w: Word = vec![(c, 1), (i, 1), (c, -1)];
        w.extend(col.iter().enumerate().filter(|(_, &e)| e != 0).map(|(j, &e)| (j, -(e as i64))));
        relators.push(w);
    }
    let generators = (1..=k + 1).collect();
    g.with_presentation(Presentation {
        generators,
        labels,
        relators,
    })
    .expect("semidirect presentation")
}

fn product(name: &str, parts: &[FiniteGroup]) -> FiniteGroup {
    let mut g = parts[0].clone();
    for p in &parts[1..] {
        g = g.direct_product(p, name);
    }
    g.renamed(name)
}

fn build() -> Vec<CatalogEntry> {
    let c = cyclic;
    let d4 = dihedral(4).renamed("D4");
    let q8 = metacyclic("Q8", 4, 2, 3, 2);
    let entry = |name: &'static str, aliases: &'static [&'static str], id: (usize, usize), group: FiniteGroup| CatalogEntry {
        name,
        aliases,
        id,
        group: group.renamed(name),
    };
    vec![
        entry("C1", &["trivial"], (1, 1), c(1)),
        entry("C2", &[], (2, 1), c(2)),
        entry("C3", &[], (3, 1), c(3)),
        entry("C4", &[], (4, 1), c(4)),
        entry("C2xC2", &["V4"], (4, 2), product("C2xC2", &[c(2), c(2)])),
        entry("C5", &[], (5, 1), c(5)),
        entry("S3", &["D3"], (6, 1), dihedral(3)),
        entry("C6", &[], (6, 2), c(6)),
        entry("C7", &[], (7, 1), c(7)),
        entry("C8", &[], (8, 1), c(8)),
        entry("C4xC2", &[], (8, 2), product("C4xC2", &[c(4), c(2)])),
        entry("D4", &[], (8, 3), d4.clone()),
        entry("Q8", &[], (8, 4), q8.clone()),
        entry("C2xC2xC2", &["C2^3"], (8, 5), product("C2xC2xC2", &[c(2), c(2), c(2)])),
        entry("C9", &[], (9, 1), c(9)),
        entry("C3xC3", &[], (9, 2), product("C3xC3", &[c(3), c(3)])),
        entry("D5", &[], (10, 1), dihedral(5)),
        entry("C10", &[], (10, 2), c(10)),
        entry("C11", &[], (11, 1), c(11)),
        entry("Dic3", &["C3:C4"], (12, 1), metacyclic("Dic3", 6, 2, 5, 3)),
        entry("C12", &[], (12, 2), c(12)),
        entry("A4", &[], (12, 3), abelian_semidirect("A4", &[2, 2], &[vec![0, 1], vec![1, 1]], 3)),
        entry("D6", &[], (12, 4), dihedral(6)),
        entry("C2xC6", &[], (12, 5), product("C2xC6", &[c(2), c(6)])),
        entry("C13", &[], (13, 1), c(13)),
        entry("D7", &[], (14, 1), dihedral(7)),
        entry("C14", &[], (14, 2), c(14)),
        entry("C15", &[], (15, 1), c(15)),
        entry("C16", &[], (16, 1), c(16)),
        entry("C4xC4", &[], (16, 2), product("C4xC4", &[c(4), c(4)])),
        entry(
            "C2^2:C4",
            &["(C4xC2):C2"],
            (16, 3),
            abelian_semidirect("C2^2:C4", &[4, 2], &[vec![1, 1], vec![0, 1]], 2),
        ),
        entry("C4:C4", &[], (16, 4), metacyclic("C4:C4", 4, 4, 3, 0)),
        entry("C8xC2", &[], (16, 5), product("C8xC2", &[c(8), c(2)])),
        entry("M16", &["C8:C2"], (16, 6), metacyclic("M16", 8, 2, 5, 0)),
        entry("D8", &[], (16, 7), dihedral(8)),
        entry("SD16", &["QD16"], (16, 8), metacyclic("SD16", 8, 2, 3, 0)),
        entry("Q16", &[], (16, 9), metacyclic("Q16", 8, 2, 7, 4)),
        entry("C4xC2xC2", &[], (16, 10), product("C4xC2xC2", &[c(4), c(2), c(2)])),
        entry("C2xD4", &[], (16, 11), product("C2xD4", &[c(2), d4])),
        entry("C2xQ8", &[], (16, 12), product("C2xQ8", &[c(2), q8])),
        entry(
            "C4oD4",
            &["Pauli"],
            (16, 13),
            abelian_semidirect("C4oD4", &[4, 2], &[vec![1, 0], vec![2, 1]], 2),
        ),
        entry("C2^4", &["C2xC2xC2xC2"], (16, 14), product("C2^4", &[c(2), c(2), c(2), c(2)])),
    ]
}

/// The built-in catalog, ordered by small-group identifier.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Looks a group up by name or alias (case-insensitive), or by
/// `order,index`.
pub fn by_name(name: &str) -> Option<&'static FiniteGroup> {
    let lower = name.to_ascii_lowercase();
    if let Some((o, i)) = lower.split_once(',') {
        if let (Ok(o), Ok(i)) = (o.trim().parse::<usize>(), i.trim().parse::<usize>()) {
            return catalog().iter().find(|e| e.id == (o, i)).map(|e| &e.group);
        }
    }
    catalog()
        .iter()
        .find(|e| e.name.to_ascii_lowercase() == lower || e.aliases.iter().any(|a| a.to_ascii_lowercase() == lower))
        .map(|e| &e.group)
}
