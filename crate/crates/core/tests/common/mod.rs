//! Test-side oracles. Everything here is written directly on
//! `BigRational` rows and shares no code path with the library, so the
//! integration tests can compare the two.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type Row = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

pub fn row(entries: &[i64]) -> Row {
    entries.iter().map(|&x| q(x)).collect()
}

pub fn zeros(n: usize) -> Row {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Row {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Q], b: &[Q]) -> Row {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Q], b: &[Q]) -> Row {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> Row {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Reduced row echelon form with zero rows dropped.
pub fn rref(rows: &[Row]) -> Vec<Row> {
    let mut m: Vec<Row> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r] = scale(&inv, &m[r]);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                m[i] = sub(&m[i], &scale(&f, &pivot));
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

pub fn rank(rows: &[Row]) -> usize {
    rref(rows).len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Row], ncols: usize) -> Vec<Row> {
    let r = rref(rows);
    let pivots: Vec<usize> = r
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = zeros(ncols);
        v[free] = Q::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

pub fn transpose(rows: &[Row], ncols: usize) -> Vec<Row> {
    (0..ncols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn span_contains(span: &[Row], v: &[Q]) -> bool {
    let mut with = span.to_vec();
    with.push(v.to_vec());
    rank(&with) == rank(span)
}

pub fn same_span(a: &[Row], b: &[Row]) -> bool {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    let r = rank(&all);
    r == rank(a) && r == rank(b)
}

pub fn intersection_dim(a: &[Row], b: &[Row]) -> usize {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    rank(a) + rank(b) - rank(&all)
}

/// `m · v` for `m` given by rows.
pub fn mat_vec(m: &[Row], v: &[Q]) -> Row {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn mat_mul(a: &[Row], b: &[Row]) -> Vec<Row> {
    let bt = transpose(b, b[0].len());
    a.iter().map(|r| bt.iter().map(|c| dot(r, c)).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Row> {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn diag(entries: &[i64]) -> Vec<Row> {
    let n = entries.len();
    (0..n)
        .map(|i| {
            let mut r = zeros(n);
            r[i] = q(entries[i]);
            r
        })
        .collect()
}

pub fn pair(g: &[Row], u: &[Q], v: &[Q]) -> Q {
    dot(u, &mat_vec(g, v))
}

/// `U^⊥` for the form `g`.
pub fn orth(g: &[Row], u: &[Row], n: usize) -> Vec<Row> {
    let rows: Vec<Row> = u.iter().map(|x| mat_vec(g, x)).collect();
    nullspace(&rows, n)
}

// ------------------------------------------------------------ relations

/// A relation is a list of rows `(x | y)` of length `2n`.
pub fn split(r: &[Q], n: usize) -> (Row, Row) {
    (r[..n].to_vec(), r[n..].to_vec())
}

pub fn join(x: &[Q], y: &[Q]) -> Row {
    x.iter().chain(y).cloned().collect()
}

/// `second ∘ first = {(x, z) : (x, y) ∈ first, (y, z) ∈ second}`.
pub fn compose(second: &[Row], first: &[Row], n: usize) -> Vec<Row> {
    // left null vectors (a, b) of [Y_first; −Y_second]
    let mut stacked: Vec<Row> = first.iter().map(|r| r[n..].to_vec()).collect();
    stacked.extend(second.iter().map(|r| r[..n].iter().map(|x| -x).collect::<Row>()));
    let k1 = first.len();
    let total = stacked.len();
    if total == 0 {
        return Vec::new();
    }
    let coeffs = nullspace(&transpose(&stacked, n), total);
    let mut out = Vec::new();
    for c in coeffs {
        let mut x = zeros(n);
        let mut z = zeros(n);
        for (i, r) in first.iter().enumerate() {
            x = add(&x, &scale(&c[i], &r[..n]));
        }
        for (j, r) in second.iter().enumerate() {
            z = add(&z, &scale(&c[k1 + j], &r[n..]));
        }
        out.push(join(&x, &z));
    }
    rref(&out)
}

pub fn inverse(l: &[Row], n: usize) -> Vec<Row> {
    rref(&l.iter().map(|r| join(&r[n..], &r[..n])).collect::<Vec<_>>())
}

pub fn diagonal(n: usize) -> Vec<Row> {
    (0..n).map(|i| join(&unit(n, i), &unit(n, i))).collect()
}

/// `E_{V0} = {(v, v + w) : v ∈ V0, w ∈ V0^⊥}`.
pub fn idempotent(g: &[Row], v0: &[Row], n: usize) -> Vec<Row> {
    let mut rows: Vec<Row> = v0.iter().map(|v| join(v, v)).collect();
    rows.extend(orth(g, v0, n).iter().map(|w| join(&zeros(n), w)));
    rref(&rows)
}

/// Graph `{(v, M v)}` of the matrix with the given rows.
pub fn graph(m: &[Row], n: usize) -> Vec<Row> {
    (0..n).map(|i| join(&unit(n, i), &mat_vec(m, &unit(n, i)))).collect()
}

pub fn p1(l: &[Row], n: usize) -> Vec<Row> {
    rref(&l.iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>())
}

pub fn p2(l: &[Row], n: usize) -> Vec<Row> {
    rref(&l.iter().map(|r| r[n..].to_vec()).collect::<Vec<_>>())
}

/// `dim (L ∩ (0 × V))` and `dim (L ∩ (V × 0))`.
pub fn kernel_dims(l: &[Row], n: usize) -> (usize, usize) {
    let d = rank(l);
    (d - rank(&p1(l, n)), d - rank(&p2(l, n)))
}

/// `p1(K2)` where `K2 = L ∩ (V × 0)`.
pub fn p1_of_k2(l: &[Row], n: usize) -> Vec<Row> {
    let ys: Vec<Row> = l.iter().map(|r| r[n..].to_vec()).collect();
    let coeffs = nullspace(&transpose(&ys, n), l.len());
    rref(
        &coeffs
            .iter()
            .map(|c| l.iter().enumerate().fold(zeros(n), |acc, (i, r)| add(&acc, &scale(&c[i], &r[..n]))))
            .collect::<Vec<_>>(),
    )
}

pub fn is_isotropic_relation(g: &[Row], l: &[Row], n: usize) -> bool {
    l.iter().all(|a| {
        l.iter().all(|b| {
            let (x, y) = split(a, n);
            let (x2, y2) = split(b, n);
            pair(g, &x, &x2) == pair(g, &y, &y2)
        })
    })
}

// ------------------------------------------------------------ root systems

/// `diag(1^m, (−1)^n)` and the roots `±(e_i − e_j)` of `gl(m|n)`.
pub fn gl(m: usize, n: usize) -> (Vec<Row>, Vec<Row>) {
    let d = m + n;
    let signs: Vec<i64> = (0..d).map(|i| if i < m { 1 } else { -1 }).collect();
    let mut roots = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                roots.push(sub(&unit(d, i), &unit(d, j)));
            }
        }
    }
    (diag(&signs), roots)
}

/// `osp(3|2)`: `B1 × C1` with odd roots `±ε ± δ` and `±δ`.
pub fn osp32() -> (Vec<Row>, Vec<Row>) {
    let g = diag(&[1, -1]);
    let mut roots = Vec::new();
    for r in [[1, 0], [0, 2], [1, 1], [1, -1], [0, 1]] {
        roots.push(row(&r));
        roots.push(row(&[-r[0], -r[1]]));
    }
    (g, roots)
}

pub fn reflection(g: &[Row], a: &[Q]) -> Vec<Row> {
    let n = a.len();
    let norm = pair(g, a, a);
    let ga = mat_vec(g, a);
    // s(x) = x − 2 ⟨x|a⟩/⟨a|a⟩ a
    (0..n)
        .map(|i| (0..n).map(|j| unit(n, i)[j].clone() - q(2) * &a[i] * &ga[j] / &norm).collect())
        .collect()
}

/// All products of reflections in the anisotropic roots.
pub fn weyl_group(g: &[Row], roots: &[Row]) -> Vec<Vec<Row>> {
    let n = g.len();
    let gens: Vec<Vec<Row>> = roots
        .iter()
        .filter(|r| !pair(g, r, r).is_zero())
        .map(|r| reflection(g, r))
        .collect();
    let mut seen: BTreeSet<Vec<Row>> = BTreeSet::from([identity(n)]);
    let mut frontier = vec![identity(n)];
    while let Some(w) = frontier.pop() {
        for s in &gens {
            let x = mat_mul(s, &w);
            if seen.insert(x.clone()) {
                frontier.push(x);
            }
        }
    }
    seen.into_iter().collect()
}

/// One representative per `±` pair of isotropic roots.
pub fn isotropic_pairs(g: &[Row], roots: &[Row]) -> Vec<Row> {
    let mut out: Vec<Row> = Vec::new();
    for r in roots {
        if pair(g, r, r).is_zero() {
            let neg: Row = r.iter().map(|x| -x).collect();
            if !out.contains(&neg) && !out.contains(r) {
                out.push(r.clone());
            }
        }
    }
    out
}

/// Every set of pairwise orthogonal isotropic pairs, by brute force over
/// subsets.
pub fn all_isosets(g: &[Row], roots: &[Row]) -> Vec<Vec<Row>> {
    let pairs = isotropic_pairs(g, roots);
    let k = pairs.len();
    assert!(k < 20, "too many isotropic pairs for brute force");
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        let chosen: Vec<&Row> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &pairs[i]).collect();
        if chosen.iter().all(|a| chosen.iter().all(|b| pair(g, a, b).is_zero())) {
            out.push(chosen.into_iter().cloned().collect());
        }
    }
    out
}

/// Iso-sets orthogonal to `v` that are maximal among those.
pub fn maximal_isosets(g: &[Row], roots: &[Row], v: &[Q]) -> Vec<Vec<Row>> {
    let orth_v: Vec<Vec<Row>> = all_isosets(g, roots)
        .into_iter()
        .filter(|s| s.iter().all(|a| pair(g, a, v).is_zero()))
        .collect();
    orth_v
        .iter()
        .filter(|s| !orth_v.iter().any(|t| t.len() > s.len() && s.iter().all(|a| t.contains(a))))
        .cloned()
        .collect()
}

/// The canonical subspaces `Γ_w ∘ E_{S^⊥}`.
pub fn described_components(g: &[Row], roots: &[Row]) -> BTreeSet<Vec<Row>> {
    let n = g.len();
    let w = weyl_group(g, roots);
    let mut out = BTreeSet::new();
    for s in all_isosets(g, roots) {
        let e = idempotent(g, &orth(g, &s, n), n);
        for x in &w {
            out.insert(compose(&graph(x, n), &e, n));
        }
    }
    out
}

// ------------------------------------------------------------ counting

/// Partitions of `d` into parts of size at most `max_part` and at most
/// `max_len` parts (either bound may be `usize::MAX`).
pub fn partitions(d: usize, max_part: usize, max_len: usize) -> Vec<Vec<usize>> {
    fn go(d: usize, max_part: usize, max_len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d == 0 {
            out.push(prefix.clone());
            return;
        }
        if prefix.len() == max_len {
            return;
        }
        for p in (1..=max_part.min(d)).rev() {
            prefix.push(p);
            go(d - p, p, max_len, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `d` in the `(m, n)` hook (`λ_{m+1} ≤ n`): the dimension of
/// degree-`d` supersymmetric polynomials in `m | n` variables.
pub fn hook_count(d: usize, m: usize, n: usize) -> usize {
    partitions(d, usize::MAX, usize::MAX)
        .into_iter()
        .filter(|l| l.get(m).map_or(true, |&x| x <= n))
        .count()
}

/// `dim C[x_1..x_m, y_1..y_n]^{S_m × S_n}` in degree `d`.
pub fn weyl_count(d: usize, m: usize, n: usize) -> usize {
    (0..=d)
        .map(|a| partitions(a, usize::MAX, m).len() * partitions(d - a, usize::MAX, n).len())
        .sum()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Exponent vectors of total degree `d` in `k` variables.
pub fn exponents(k: usize, d: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in exponents(k - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

pub fn monomial_value(e: &[usize], x: &[Q]) -> Q {
    e.iter().zip(x).fold(Q::one(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k))
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Library vectors as oracle rows (both are `BigRational`).
pub fn rows_of(m: &lagrel::linalg::Matrix) -> Vec<Row> {
    m.to_rows()
}
