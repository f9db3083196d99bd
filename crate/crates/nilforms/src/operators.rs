//! The differential operators d, μ, ∂, ∂̄, μ̄, d^c, dd^c on invariant forms,
//! and per-bidegree matrix extraction.

use crate::form::{basis_monomials, form_to_coords, Form, Monomial};
use crate::linalg::QMatrix;
use crate::scalar::Q;
use crate::structure::StructurePresentation;

/// Chevalley-Eilenberg differential, extended from the generator table by
/// the graded Leibniz rule.
pub fn d(pres: &StructurePresentation, f: &Form) -> Form {
    let n = pres.dim();
    let mut out = Form::zero(n);
    for (m, c) in f.terms() {
        let factors = m.factors();
        for (t, &(idx, barred)) in factors.iter().enumerate() {
            let dgen = if barred { pres.d_generator_bar(idx) } else { pres.d_generator(idx) };
            if dgen.is_zero() {
                continue;
            }
            let prefix = monomial_from_factors(&factors[..t]);
            let suffix = monomial_from_factors(&factors[t + 1..]);
            let sign = if t % 2 == 0 { c.clone() } else { -c.clone() };
            // prefix ∧ dgen ∧ suffix, all canonical monomial pieces.
            let pre = Form::zero(n).with_term(prefix, sign);
            let mid = pre.wedge(dgen).expect("dims agree");
            let full = mid
                .wedge(&Form::zero(n).with_term(suffix, Q::one()))
                .expect("dims agree");
            out = out.add(&full);
        }
    }
    out
}

fn monomial_from_factors(factors: &[(usize, bool)]) -> Monomial {
    let mut u = 0u32;
    let mut b = 0u32;
    for &(i, barred) in factors {
        if barred {
            b |= 1 << (i - 1);
        } else {
            u |= 1 << (i - 1);
        }
    }
    Monomial { unbarred: u, barred: b }
}

impl Form {
    fn with_term(mut self, m: Monomial, c: Q) -> Form {
        self.add_term(m, c);
        self
    }
}

/// Projection of d moving (p,q) -> (p+dp, q+dq), extended linearly over the
/// pure components of the input.
fn d_component(pres: &StructurePresentation, f: &Form, dp: i64, dq: i64) -> Form {
    let n = pres.dim();
    let mut out = Form::zero(n);
    for (p, q) in f.bidegrees() {
        let part = f.project(p, q);
        let tp = p as i64 + dp;
        let tq = q as i64 + dq;
        if tp < 0 || tq < 0 || tp as usize > n || tq as usize > n {
            continue;
        }
        out = out.add(&d(pres, &part).project(tp as usize, tq as usize));
    }
    out
}

/// μ: (p,q) -> (p+2, q−1).
pub fn mu(pres: &StructurePresentation, f: &Form) -> Form {
    d_component(pres, f, 2, -1)
}

/// ∂: (p,q) -> (p+1, q).
pub fn del(pres: &StructurePresentation, f: &Form) -> Form {
    d_component(pres, f, 1, 0)
}

/// ∂̄: (p,q) -> (p, q+1).
pub fn delbar(pres: &StructurePresentation, f: &Form) -> Form {
    d_component(pres, f, 0, 1)
}

/// μ̄: (p,q) -> (p−1, q+2).
pub fn mubar(pres: &StructurePresentation, f: &Form) -> Form {
    d_component(pres, f, -1, 2)
}

pub fn del_delbar(pres: &StructurePresentation, f: &Form) -> Form {
    del(pres, &delbar(pres, f))
}

/// The almost-complex-structure action on forms: i^{p−q} on the (p,q) part.
pub fn j_action(f: &Form) -> Form {
    let mut out = Form::zero(f.dim());
    for (p, q) in f.bidegrees() {
        let factor = Q::i_pow(p as i64 - q as i64);
        out = out.add(&f.project(p, q).scale(&factor));
    }
    out
}

pub fn j_inverse(f: &Form) -> Form {
    let mut out = Form::zero(f.dim());
    for (p, q) in f.bidegrees() {
        let factor = Q::i_pow(q as i64 - p as i64);
        out = out.add(&f.project(p, q).scale(&factor));
    }
    out
}

/// d^c = J^{−1} ∘ d ∘ J. For integrable structures this equals i(∂̄−∂);
/// in general it also carries i(μ−μ̄).
pub fn dc(pres: &StructurePresentation, f: &Form) -> Form {
    j_inverse(&d(pres, &j_action(f)))
}

/// dd^c = d ∘ d^c. Equals 2i∂∂̄ exactly when the structure is integrable.
pub fn ddc(pres: &StructurePresentation, f: &Form) -> Form {
    d(pres, &dc(pres, f))
}

/// Named operators with per-bidegree matrix extraction.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Op {
    D,
    Mu,
    Del,
    Delbar,
    Mubar,
    DelDelbar,
    Ddc,
}

impl Op {
    pub fn name(&self) -> &'static str {
        match self {
            Op::D => "d",
            Op::Mu => "mu",
            Op::Del => "del",
            Op::Delbar => "delbar",
            Op::Mubar => "mubar",
            Op::DelDelbar => "deldelbar",
            Op::Ddc => "ddc",
        }
    }

    /// Bidegree shift (dp, dq) for the single-target operators.
    pub fn shift(&self) -> Option<(i64, i64)> {
        match self {
            Op::Mu => Some((2, -1)),
            Op::Del => Some((1, 0)),
            Op::Delbar => Some((0, 1)),
            Op::Mubar => Some((-1, 2)),
            Op::DelDelbar => Some((1, 1)),
            Op::D | Op::Ddc => None,
        }
    }

    pub fn apply(&self, pres: &StructurePresentation, f: &Form) -> Form {
        match self {
            Op::D => d(pres, f),
            Op::Mu => mu(pres, f),
            Op::Del => del(pres, f),
            Op::Delbar => delbar(pres, f),
            Op::Mubar => mubar(pres, f),
            Op::DelDelbar => del_delbar(pres, f),
            Op::Ddc => ddc(pres, f),
        }
    }
}

/// Matrix of a bidegree-homogeneous operator over the canonical monomial
/// bases, columns indexed by the source basis.
#[derive(Clone)]
pub struct OperatorMatrix {
    pub op_name: String,
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub source_basis: Vec<Monomial>,
    pub target_basis: Vec<Monomial>,
    pub matrix: QMatrix,
}

/// Build the matrix of `op` on Λ^{p,q}; the operator must shift bidegree
/// homogeneously (everything except d and dd^c).
pub fn operator_matrix(
    pres: &StructurePresentation,
    op: Op,
    p: usize,
    q: usize,
) -> OperatorMatrix {
    let (dp, dq) = op.shift().expect("operator must have a single target bidegree");
    let n = pres.dim();
    let source_basis = basis_monomials(n, p, q);
    let tp = p as i64 + dp;
    let tq = q as i64 + dq;
    let target_basis = if tp < 0 || tq < 0 || tp as usize > n || tq as usize > n {
        Vec::new()
    } else {
        basis_monomials(n, tp as usize, tq as usize)
    };
    let mut cols = Vec::with_capacity(source_basis.len());
    for m in &source_basis {
        let mut f = Form::zero(n);
        f.add_term(*m, Q::one());
        let img = op.apply(pres, &f);
        let img = if target_basis.is_empty() {
            vec![]
        } else {
            form_to_coords(
                &img.project(tp as usize, tq as usize),
                &target_basis,
            )
        };
        cols.push(img);
    }
    OperatorMatrix {
        op_name: op.name().to_string(),
        source: (p, q),
        target: (tp.max(0) as usize, tq.max(0) as usize),
        source_basis,
        target_basis: target_basis.clone(),
        matrix: QMatrix::from_columns(target_basis.len(), &cols),
    }
}

/// Matrix of d from total degree k to k+1 (used for de Rham ranks).
pub fn d_matrix_degree(pres: &StructurePresentation, k: usize) -> (Vec<Monomial>, Vec<Monomial>, QMatrix) {
    let n = pres.dim();
    let source = crate::form::basis_monomials_degree(n, k);
    let target = crate::form::basis_monomials_degree(n, k + 1);
    let mut cols = Vec::with_capacity(source.len());
    for m in &source {
        let mut f = Form::zero(n);
        f.add_term(*m, Q::one());
        cols.push(form_to_coords(&d(pres, &f), &target));
    }
    let mat = QMatrix::from_columns(target.len(), &cols);
    (source, target, mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::form::basis_monomials;
    use rand::{Rng, SeedableRng};

    fn rand_form(
        rng: &mut rand_chacha::ChaCha8Rng,
        n: usize,
        maxdeg: usize,
    ) -> Form {
        let mut f = Form::zero(n);
        for p in 0..=maxdeg.min(n) {
            for q in 0..=(maxdeg - p).min(n) {
                for m in basis_monomials(n, p, q) {
                    if rng.gen_bool(0.15) {
                        f.add_term(m, Q::from_parts(rng.gen_range(-2..=2), 1, rng.gen_range(-2..=2), 1));
                    }
                }
            }
        }
        f
    }

    #[test]
    fn d_of_constant_is_zero() {
        let pres = catalog::build_with_defaults("kt_kt").unwrap();
        let c = Form::constant(4, Q::from_parts(2, 3, 1, 5));
        assert!(d(&pres, &c).is_zero());
    }

    #[test]
    fn d_on_fps_matches_structure_equation() {
        // dα³ canonicalizes to −Aα^{2 1̄} − Bα^{2 2̄} + Cα^{1 1̄} + Dα^{1 2̄} + Eα^{12}.
        let pres = catalog::build(
            "fps6",
            &[("A", "2"), ("B", "3"), ("C", "5+1*i"), ("D", "7"), ("E", "11")],
        )
        .unwrap();
        let e3 = Form::monomial(3, Q::one(), &[3], &[]);
        let got = d(&pres, &e3);
        let expected = Form::monomial(3, Q::from_int(-2), &[2], &[1])
            .add(&Form::monomial(3, Q::from_int(-3), &[2], &[2]))
            .add(&Form::monomial(3, Q::from_parts(5, 1, 1, 1), &[1], &[1]))
            .add(&Form::monomial(3, Q::from_int(7), &[1], &[2]))
            .add(&Form::monomial(3, Q::from_int(11), &[1, 2], &[]));
        assert_eq!(got, expected);
        // and the bidegree split of the same equation
        assert_eq!(del(&pres, &e3), Form::monomial(3, Q::from_int(11), &[1, 2], &[]));
        assert_eq!(delbar(&pres, &e3), expected.project(1, 1));
    }

    #[test]
    fn d_eta11_closed_on_kodaira_product() {
        let pres = catalog::build("kt_kt", &[("A", "1"), ("B", "1")]).unwrap();
        let f = Form::monomial(4, Q::one(), &[1], &[1]);
        assert!(d(&pres, &f).is_zero());
        // dη² = Aη^{1 1̄}; dη̄² = −conj(A)η^{1 1̄}
        assert_eq!(
            pres.d_generator(2),
            &Form::monomial(4, Q::one(), &[1], &[1])
        );
        assert_eq!(
            pres.d_generator_bar(2),
            &Form::monomial(4, -Q::one(), &[1], &[1])
        );
    }

    #[test]
    fn d_splits_into_four_components_on_all_catalog_entries() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for entry in catalog::entries() {
            let pres = catalog::build_with_defaults(entry.name).unwrap();
            let n = pres.dim();
            for _ in 0..40 {
                let f = rand_form(&mut rng, n, 3);
                let total = d(&pres, &f);
                let sum = mu(&pres, &f)
                    .add(&del(&pres, &f))
                    .add(&delbar(&pres, &f))
                    .add(&mubar(&pres, &f));
                assert_eq!(total, sum, "d != mu+del+delbar+mubar on {}", entry.name);
                // d² = 0 holds for any Lie-algebra differential, integrable or not.
                assert!(d(&pres, &total).is_zero(), "d^2 != 0 on {}", entry.name);
            }
        }
    }

    #[test]
    fn integrable_identities() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for name in ["kt_kt", "fps6", "inoue_kt", "fam4", "y3"] {
            let pres = catalog::build_with_defaults(name).unwrap();
            let n = pres.dim();
            for _ in 0..30 {
                let f = rand_form(&mut rng, n, 2);
                assert!(mu(&pres, &f).is_zero());
                assert!(mubar(&pres, &f).is_zero());
                assert!(del(&pres, &del(&pres, &f)).is_zero());
                assert!(delbar(&pres, &delbar(&pres, &f)).is_zero());
                let anti = del(&pres, &delbar(&pres, &f))
                    .add(&delbar(&pres, &del(&pres, &f)));
                assert!(anti.is_zero());
                // d^c = i(∂̄ − ∂) and dd^c = 2i∂∂̄
                let lhs = dc(&pres, &f);
                let rhs = delbar(&pres, &f).sub(&del(&pres, &f)).scale(&Q::i());
                assert_eq!(lhs, rhs, "dc identity fails on {name}");
                let lhs2 = ddc(&pres, &f);
                let rhs2 = del_delbar(&pres, &f).scale(&(Q::i() * Q::from_int(2)));
                assert_eq!(lhs2, rhs2, "ddc identity fails on {name}");
            }
        }
    }

    #[test]
    fn mubar_on_almost_complex_family() {
        let pres = catalog::build(
            "almost4",
            &[
                ("a1", "0"),
                ("a2", "0"),
                ("a3", "0"),
                ("a4", "0"),
                ("a5", "0"),
                ("a6", "2"),
                ("a7", "3"),
            ],
        )
        .unwrap();
        let psi4 = Form::monomial(4, Q::one(), &[4], &[]);
        let got = mubar(&pres, &psi4);
        let expected = Form::monomial(4, Q::from_int(2), &[], &[1, 2])
            .add(&Form::monomial(4, Q::from_int(3), &[], &[2, 3]));
        assert_eq!(got, expected);
    }

    #[test]
    fn dc_of_constant_is_zero() {
        let pres = catalog::build_with_defaults("y3").unwrap();
        let c = Form::constant(3, Q::from_int(5));
        assert!(dc(&pres, &c).is_zero());
    }

    #[test]
    fn operator_matrix_composition_agrees_with_application() {
        let pres = catalog::build("kt_kt", &[("A", "1"), ("B", "1")]).unwrap();
        let del_m = operator_matrix(&pres, Op::Del, 1, 1);
        let delbar_m = operator_matrix(&pres, Op::Delbar, 1, 1);
        let dd_m = operator_matrix(&pres, Op::DelDelbar, 1, 1);
        // ∂∂̄ as a matrix equals ∂-at-(1,2) times ∂̄-at-(1,1).
        let del_12 = operator_matrix(&pres, Op::Del, 1, 2);
        let composed = del_12.matrix.mul(&delbar_m.matrix);
        assert_eq!(composed, dd_m.matrix);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let basis = basis_monomials(4, 1, 1);
        for _ in 0..20 {
            let mut f = Form::zero(4);
            for m in &basis {
                if rng.gen_bool(0.4) {
                    f.add_term(*m, Q::from_parts(rng.gen_range(-2..=2), 1, rng.gen_range(-2..=2), 1));
                }
            }
            let coords = crate::form::form_to_coords(&f, &basis);
            let via_matrix = del_m.matrix.mul_vec(&coords);
            let direct = crate::form::form_to_coords(&del(&pres, &f), &del_m.target_basis);
            assert_eq!(via_matrix, direct);
        }
    }

    #[test]
    fn d_matrix_on_constants_is_zero_column() {
        let pres = catalog::build_with_defaults("fps6").unwrap();
        let (src, _tgt, m) = d_matrix_degree(&pres, 0);
        assert_eq!(src.len(), 1);
        assert!(m.column(0).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn fps_deldelbar_vanishes_with_constraint() {
        let pres = catalog::build(
            "fps6",
            &[("A", "0"), ("B", "1"), ("C", "i"), ("D", "0"), ("E", "0")],
        )
        .unwrap();
        for p in 0..=3 {
            for q in 0..=3 {
                let m = operator_matrix(&pres, Op::DelDelbar, p, q);
                assert!(m.matrix.is_zero(), "deldelbar nonzero at ({p},{q})");
            }
        }
    }

    #[test]
    fn del_rank_on_inoue_product() {
        let pres = catalog::build(
            "inoue_inoue",
            &[("alpha", "1"), ("beta", "0"), ("gamma", "1"), ("delta", "0")],
        )
        .unwrap();
        let m = operator_matrix(&pres, Op::Del, 1, 1);
        assert_eq!(m.matrix.rank(), 12);
    }
}
