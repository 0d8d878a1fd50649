//! Seeded generators for forms, isometries and lagrangian relations.
//!
//! Everything takes a caller-provided [`Rng`]; the suites use
//! `ChaCha8Rng::seed_from_u64` so runs are reproducible.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::{frac, int, BilinearForm, Scalar, Subspace, Vector};
use crate::relation::{Isometry, LinearRelation};

/// `diag(±1)` with both signs present whenever `n ≥ 2`.
pub fn random_form(rng: &mut impl Rng, n: usize) -> BilinearForm {
    let p = if n >= 2 { rng.gen_range(1..n) } else { n };
    BilinearForm::signature(p, n - p)
}

/// Integer vector with entries in `[-r, r]`.
pub fn random_int_vector(rng: &mut impl Rng, n: usize, r: i64) -> Vector {
    (0..n).map(|_| int(rng.gen_range(-r..=r))).collect()
}

/// Rational vector with numerators in `[-r, r]` and denominators in `1..=3`.
pub fn random_rational_vector(rng: &mut impl Rng, n: usize, r: i64) -> Vector {
    (0..n)
        .map(|_| frac(rng.gen_range(-r..=r), rng.gen_range(1..=3)))
        .collect()
}

/// Product of two or three reflections in small anisotropic vectors.
pub fn random_isometry(rng: &mut impl Rng, form: &BilinearForm) -> Isometry {
    let n = form.dim();
    let mut g = Isometry::identity(form);
    if n == 0 {
        return g;
    }
    let count = rng.gen_range(2..=3);
    let mut made = 0;
    while made < count {
        let a = random_int_vector(rng, n, 2);
        if form.norm(&a).is_zero() {
            continue;
        }
        g = Isometry::reflection(form, &a).expect("anisotropic").compose(&g);
        made += 1;
    }
    g
}

/// A random isotropic subspace of dimension `k` (at most the Witt index of
/// a signature form): sums `e_i + f_j` of disjoint positive and negative
/// basis vectors, moved by a random isometry.
pub fn random_isotropic_subspace(rng: &mut impl Rng, form: &BilinearForm, k: usize) -> Subspace {
    let n = form.dim();
    let positives: Vec<usize> = (0..n).filter(|&i| *form.gram().get(i, i) > Scalar::zero()).collect();
    let mut negatives: Vec<usize> = (0..n).filter(|&i| *form.gram().get(i, i) < Scalar::zero()).collect();
    let mut pos = positives;
    pos.shuffle(rng);
    negatives.shuffle(rng);
    let k = k.min(pos.len()).min(negatives.len());
    let vectors: Vec<Vector> = (0..k)
        .map(|t| {
            let mut v = vec![Scalar::zero(); n];
            v[pos[t]] = int(1);
            v[negatives[t]] = int(if rng.gen_bool(0.5) { 1 } else { -1 });
            v
        })
        .collect();
    let u = Subspace::span(n, &vectors).expect("shape");
    random_isometry(rng, form).apply_subspace(&u)
}

/// `Γ_h ∘ E_{U^⊥}` for a random isometry `h` and random isotropic `U`; the
/// atypicality is `dim U`, uniform over what the form allows.
pub fn random_lagrangian(rng: &mut impl Rng, form: &BilinearForm) -> LinearRelation {
    let n = form.dim();
    let witt = {
        let p = (0..n).filter(|&i| *form.gram().get(i, i) > Scalar::zero()).count();
        p.min(n - p)
    };
    let k = rng.gen_range(0..=witt);
    let u = random_isotropic_subspace(rng, form, k);
    let v0 = form.orth_complement(&u).expect("same ambient");
    let e = LinearRelation::idempotent_for(form, &v0).expect("coisotropic");
    random_isometry(rng, form).graph().compose(&e).expect("same form")
}

/// A random pair `(x, y) ∈ L`.
pub fn random_pair_in(rng: &mut impl Rng, l: &LinearRelation, r: i64) -> (Vector, Vector) {
    let n = l.n();
    let coeffs = random_rational_vector(rng, l.dim(), r);
    let v = l.space().basis().vec_mul(&coeffs);
    (v[..n].to_vec(), v[n..].to_vec())
}
