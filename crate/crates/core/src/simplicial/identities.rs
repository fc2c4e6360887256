use std::fmt;

/// A face `d_i` or degeneracy `s_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    D(usize),
    S(usize),
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::D(i) => write!(f, "d_{i}"),
            Op::S(j) => write!(f, "s_{j}"),
        }
    }
}

/// `lhs = rhs` as composites on level `level`; composites are written left
/// to right as in `d_i d_j`, so the last entry is applied first.
#[derive(Clone, Debug)]
pub struct Identity {
    pub level: usize,
    pub lhs: Vec<Op>,
    pub rhs: Vec<Op>,
}

impl Identity {
    pub fn name(&self) -> String {
        let side = |ops: &[Op]| {
            if ops.is_empty() {
                "id".to_string()
            } else {
                ops.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            }
        };
        format!("{} = {}", side(&self.lhs), side(&self.rhs))
    }

    /// The left-hand composite alone, e.g. `d_0 d_1`.
    pub fn lhs_name(&self) -> String {
        self.lhs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

/// Every simplicial identity whose terms stay within levels `0..=top`, by
/// level, faces first.
pub fn identities(top: usize) -> Vec<Identity> {
    let mut out = Vec::new();
    for n in 0..=top {
        for j in 1..=n {
            for i in 0..j {
                if n >= 2 {
                    out.push(Identity {
                        level: n,
                        lhs: vec![Op::D(i), Op::D(j)],
                        rhs: vec![Op::D(j - 1), Op::D(i)],
                    });
                }
            }
        }
        if n < top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let rhs = if i < j {
                        if n == 0 {
                            continue;
                        }
                        vec![Op::S(j - 1), Op::D(i)]
                    } else if i == j || i == j + 1 {
                        Vec::new()
                    } else {
                        vec![Op::S(j), Op::D(i - 1)]
                    };
                    out.push(Identity {
                        level: n,
                        lhs: vec![Op::D(i), Op::S(j)],
                        rhs,
                    });
                }
            }
        }
        if n + 2 <= top {
            for j in 0..=n {
                for i in 0..=j {
                    out.push(Identity {
                        level: n,
                        lhs: vec![Op::S(i), Op::S(j)],
                        rhs: vec![Op::S(j + 1), Op::S(i)],
                    });
                }
            }
        }
    }
    out
}

/// Level reached after applying `op` at `level`.
pub fn target_level(op: Op, level: usize) -> usize {
    match op {
        Op::D(_) => level - 1,
        Op::S(_) => level + 1,
    }
}

/// Non-decreasing surjection `[n] -> [k]` as its value list.
pub type Surj = Vec<usize>;

/// Order-preserving surjections `[n] -> [k]`, in lexicographic order.
pub fn surjections(n: usize, k: usize) -> Vec<Surj> {
    fn rec(pos: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Surj>) {
        if pos > n {
            if cur[n] == k {
                out.push(cur.clone());
            }
            return;
        }
        let prev = cur[pos - 1];
        let remaining = n - pos + 1;
        for step in 0..=1 {
            let v = prev + step;
            // the rest must still be able to reach k
            if v <= k && k - v < remaining {
                cur.push(v);
                rec(pos + 1, n, k, cur, out);
                cur.pop();
            }
        }
    }
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    if n == 0 {
        return vec![cur];
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// The coface `[n-1] -> [n]` missing `i`, or the codegeneracy
/// `[n+1] -> [n]` hitting `j` twice, as a value list.
pub fn cosimplicial(op: Op, n: usize) -> Vec<usize> {
    match op {
        Op::D(i) => (0..n).map(|t| if t < i { t } else { t + 1 }).collect(),
        Op::S(j) => (0..=n + 1).map(|t| if t <= j { t } else { t - 1 }).collect(),
    }
}
