//! Shared helpers for the integration suites.

use nilforms::form::Form;
use nilforms::linalg::QMatrix;
use nilforms::metric::HermitianMetric;
use nilforms::scalar::Q;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn mono(n: usize, u: &[usize], b: &[usize]) -> Form {
    Form::monomial(n, Q::one(), u, b)
}

pub fn rand_scalar(rng: &mut ChaCha8Rng, bound: i64) -> Q {
    Q::from_parts(
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=bound),
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=bound),
    )
}

pub fn rand_nonzero_scalar(rng: &mut ChaCha8Rng, bound: i64) -> Q {
    loop {
        let q = rand_scalar(rng, bound);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn random_invariant_metric(rng: &mut ChaCha8Rng, n: usize) -> HermitianMetric {
    loop {
        let t: Vec<Vec<Q>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Q::from_parts(rng.gen_range(-2..=2), 1, rng.gen_range(-2..=2), 1))
                    .collect()
            })
            .collect();
        let mut h = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::zero();
                for row in &t {
                    let add = &row[i].conj() * &row[j];
                    s += &add;
                }
                h[i][j] = s;
            }
        }
        if let Ok(m) = HermitianMetric::new(h) {
            return m;
        }
    }
}

pub fn random_diagonal_metric(rng: &mut ChaCha8Rng, n: usize) -> HermitianMetric {
    let diag: Vec<Q> = (0..n)
        .map(|_| Q::from_ratio(rng.gen_range(1..=5), rng.gen_range(1..=5)))
        .collect();
    HermitianMetric::diagonal(diag).expect("positive diagonal")
}

pub fn span_matrix(forms: &[Form], basis: &[nilforms::form::Monomial]) -> QMatrix {
    let cols: Vec<Vec<Q>> = forms
        .iter()
        .map(|f| nilforms::form::form_to_coords(f, basis))
        .collect();
    QMatrix::from_columns(basis.len(), &cols)
}

/// Evaluate the corrected astheno bracket of the 5-dimensional family.
pub fn fam5_bracket(g: &dyn Fn(&str) -> Q) -> Q {
    let (a4, b4, c4, d4) = (g("a4"), g("b4"), g("c4"), g("d4"));
    let pairs = (&d4 * &a4.conj())
        + (&d4 * &b4.conj())
        + (&d4 * &c4.conj())
        + (&c4 * &a4.conj())
        + (&c4 * &b4.conj())
        + (&b4 * &a4.conj());
    let mut acc = pairs.two_re();
    for k in [
        "a1", "a2", "a3", "a5", "a6", "a7", "b1", "b2", "b3", "b5", "b6", "c1", "c2", "c3", "c5",
        "d1", "d2", "d3",
    ] {
        acc = acc - g(k).norm_sqr();
    }
    acc
}

/// The four-equation system governing the restricted family (free
/// a1, a4, b4, c1, c4, d4): the simultaneous vanishing of the degree-2 and
/// degree-3 Gauduchon residuals.
pub fn restricted_system_holds(a1: &Q, a4: &Q, b4: &Q, c1: &Q, c4: &Q, d4: &Q) -> bool {
    let two_re = |z: Q| z.two_re();
    let e1 = two_re(
        (d4 * &a4.conj())
            + (d4 * &b4.conj())
            + (d4 * &c4.conj())
            + (c4 * &a4.conj())
            + (c4 * &b4.conj())
            + (b4 * &a4.conj()),
    ) - a1.norm_sqr()
        - c1.norm_sqr();
    let e2 = two_re((c4 * &a4.conj()) + (c4 * &b4.conj()) + (b4 * &a4.conj())) - a1.norm_sqr();
    let e3 = ((c4 * &b4.conj()) - (d4 * &a4.conj())).two_re();
    let e4 = ((b4 * &d4.conj()) - (c4 * &a4.conj())).two_re();
    e1.is_zero() && e2.is_zero() && e3.is_zero() && e4.is_zero()
}

/// |A|² + |D|² + |E|² + 2Re(conj(B)·C), the six-dimensional SKT bracket.
pub fn fps_bracket(a: &Q, b: &Q, c: &Q, d: &Q, e: &Q) -> Q {
    a.norm_sqr() + d.norm_sqr() + e.norm_sqr() + (&b.conj() * c).two_re()
}
