//! Root data of `gl(m|n)` and `osp(M|N)`.
//!
//! Coordinates are `(ε_1, …, ε_m, δ_1, …, δ_n)` with `⟨ε_i|ε_i⟩ = 1` and
//! `⟨δ_j|δ_j⟩ = −1`.

use std::collections::BTreeSet;

use super::RootSystem;
use crate::error::{Error, Result};
use crate::linalg::{BilinearForm, Vector};

/// A named catalog entry with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: Vec<usize>,
}

impl std::fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({}|{})", self.name, self.params[0], self.params[1])
    }
}

/// Known family names.
pub fn catalog_names() -> &'static [&'static str] {
    &["gl", "osp"]
}

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

struct Builder {
    n: usize,
    roots: BTreeSet<Vec<i64>>,
}

impl Builder {
    fn pm(&mut self, v: Vec<i64>) {
        self.roots.insert(v.iter().map(|x| -x).collect());
        self.roots.insert(v);
    }

    /// `±a ± b` for unit directions `a`, `b`.
    fn pm_pm(&mut self, i: usize, j: usize) {
        for s in [1, -1] {
            self.pm(add(&unit(self.n, i, 1), &unit(self.n, j, s)));
        }
    }

    fn finish(self, form: BilinearForm) -> Result<RootSystem> {
        let roots: Vec<Vector> = self.roots.into_iter().map(|r| crate::linalg::vector(&r)).collect();
        RootSystem::new_validated(form, roots)
    }
}

/// `gl(m|n)` (parameters `[m, n]`) or `osp(M|N)` (parameters `[M, N]`, `N`
/// even; `M` odd gives type B, `M` even type D/C).
pub fn catalog(name: &str, params: &[usize]) -> Result<RootSystem> {
    let bad = || Error::UnknownCatalogEntry(format!("{name} {params:?}"));
    let &[a, b] = params else {
        return Err(bad());
    };
    match name {
        "gl" => {
            let (m, n) = (a, b);
            if m + n == 0 {
                return Err(bad());
            }
            let d = m + n;
            let mut builder = Builder {
                n: d,
                roots: BTreeSet::new(),
            };
            for i in 0..d {
                for j in 0..d {
                    let same_block = (i < m) == (j < m);
                    if i < j || (!same_block && i != j) {
                        builder.pm(add(&unit(d, i, 1), &unit(d, j, -1)));
                    }
                }
            }
            builder.finish(BilinearForm::signature(m, n))
        }
        "osp" => {
            let (big_m, big_n) = (a, b);
            if big_n % 2 != 0 || big_m + big_n == 0 {
                return Err(bad());
            }
            let (m, n) = (big_m / 2, big_n / 2);
            let odd = big_m % 2 == 1;
            let d = m + n;
            if d == 0 {
                return Err(bad());
            }
            let mut builder = Builder {
                n: d,
                roots: BTreeSet::new(),
            };
            // even part
            for i in 0..m {
                for j in i + 1..m {
                    builder.pm_pm(i, j);
                }
                if odd {
                    builder.pm(unit(d, i, 1));
                }
            }
            for i in m..d {
                for j in i + 1..d {
                    builder.pm_pm(i, j);
                }
                builder.pm(unit(d, i, 2));
            }
            // odd part
            for i in 0..m {
                for j in m..d {
                    builder.pm_pm(i, j);
                }
            }
            if odd {
                for j in m..d {
                    builder.pm(unit(d, j, 1));
                }
            }
            builder.finish(BilinearForm::signature(m, n))
        }
        _ => Err(bad()),
    }
}
