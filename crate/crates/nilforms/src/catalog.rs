//! Built-in catalog of structure-equation families.
//!
//! Every entry validates (d² = 0) for any admissible parameter values; the
//! docstrings carry the structure equations themselves.

use crate::error::MathError;
use crate::form::Form;
use crate::scalar::Q;
use crate::structure::StructurePresentation;
use std::collections::BTreeMap;

#[derive(Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

#[derive(Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub dim_doc: &'static str,
    pub doc: &'static str,
    pub params: &'static [ParamSpec],
}

const FAM5_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "a1", default: "1", doc: "coefficient of e1^e2" },
    ParamSpec { name: "a2", default: "0", doc: "coefficient of e1^e3" },
    ParamSpec { name: "a3", default: "0", doc: "coefficient of e1^e4" },
    ParamSpec { name: "a4", default: "-1/10-1/5*i", doc: "coefficient of e1^~e1" },
    ParamSpec { name: "a5", default: "0", doc: "coefficient of e1^~e2" },
    ParamSpec { name: "a6", default: "0", doc: "coefficient of e1^~e3" },
    ParamSpec { name: "a7", default: "0", doc: "coefficient of e1^~e4" },
    ParamSpec { name: "b1", default: "0", doc: "coefficient of e2^e3" },
    ParamSpec { name: "b2", default: "0", doc: "coefficient of e2^e4" },
    ParamSpec { name: "b3", default: "0", doc: "coefficient of e2^~e1" },
    ParamSpec { name: "b4", default: "i", doc: "coefficient of e2^~e2" },
    ParamSpec { name: "b5", default: "0", doc: "coefficient of e2^~e3" },
    ParamSpec { name: "b6", default: "0", doc: "coefficient of e2^~e4" },
    ParamSpec { name: "c1", default: "0", doc: "coefficient of e3^e4" },
    ParamSpec { name: "c2", default: "0", doc: "coefficient of e3^~e1" },
    ParamSpec { name: "c3", default: "0", doc: "coefficient of e3^~e2" },
    ParamSpec { name: "c4", default: "i", doc: "coefficient of e3^~e3" },
    ParamSpec { name: "c5", default: "0", doc: "coefficient of e3^~e4" },
    ParamSpec { name: "d1", default: "0", doc: "coefficient of e4^~e1" },
    ParamSpec { name: "d2", default: "0", doc: "coefficient of e4^~e2" },
    ParamSpec { name: "d3", default: "0", doc: "coefficient of e4^~e3" },
    ParamSpec { name: "d4", default: "1", doc: "coefficient of e4^~e4" },
];

const BLOWUP_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "a1", default: "-1-3*i", doc: "coefficient of -e1^e2" },
    ParamSpec { name: "a4", default: "1", doc: "coefficient of e1^~e1" },
    ParamSpec { name: "b4", default: "1", doc: "coefficient of e2^~e2" },
    ParamSpec { name: "c1", default: "-4", doc: "coefficient of -e3^e4" },
    ParamSpec { name: "c4", default: "2", doc: "coefficient of e3^~e3" },
    ParamSpec { name: "d4", default: "2", doc: "coefficient of e4^~e4" },
];

const ALMOST4_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "a1", default: "1", doc: "coefficient of e1^e2" },
    ParamSpec { name: "a2", default: "1", doc: "coefficient of e2^e3" },
    ParamSpec { name: "a3", default: "0", doc: "coefficient of e1^~e1" },
    ParamSpec { name: "a4", default: "0", doc: "coefficient of e2^~e2" },
    ParamSpec { name: "a5", default: "0", doc: "coefficient of e3^~e3" },
    ParamSpec { name: "a6", default: "1", doc: "coefficient of ~e1^~e2" },
    ParamSpec { name: "a7", default: "-1", doc: "coefficient of ~e2^~e3" },
];

const FPS_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "A", default: "0", doc: "coefficient of ~e1^e2" },
    ParamSpec { name: "B", default: "1", doc: "coefficient of ~e2^e2" },
    ParamSpec { name: "C", default: "i", doc: "coefficient of e1^~e1" },
    ParamSpec { name: "D", default: "0", doc: "coefficient of e1^~e2" },
    ParamSpec { name: "E", default: "0", doc: "coefficient of e1^e2" },
];

const GEN_N_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "n", default: "4", doc: "complex dimension, 2..=8" },
    ParamSpec { name: "m11", default: "1", doc: "coefficient of e1^~e1 (any mIJ with I,J < n accepted)" },
    ParamSpec { name: "m12", default: "1", doc: "coefficient of e1^~e2" },
    ParamSpec { name: "m21", default: "1", doc: "coefficient of e2^~e1" },
    ParamSpec { name: "m22", default: "1", doc: "coefficient of e2^~e2" },
];

const KT_KT_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "A", default: "1", doc: "nonzero; coefficient of e1^~e1 in d2" },
    ParamSpec { name: "B", default: "1", doc: "nonzero; coefficient of e3^~e3 in d4" },
];

const INOUE_INOUE_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "alpha", default: "1", doc: "nonzero real rational" },
    ParamSpec { name: "beta", default: "0", doc: "real rational" },
    ParamSpec { name: "gamma", default: "1", doc: "nonzero real rational" },
    ParamSpec { name: "delta", default: "0", doc: "real rational" },
];

const INOUE_KT_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "alpha", default: "1", doc: "nonzero real rational" },
    ParamSpec { name: "beta", default: "0", doc: "real rational" },
];

const FAM4_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "A", default: "1", doc: "nonzero; coefficient of e2^~e1 in d3" },
    ParamSpec { name: "B1", default: "0", doc: "coefficient of e1^e2 in d4" },
    ParamSpec { name: "B2", default: "1", doc: "coefficient of e1^~e1 in d4" },
    ParamSpec { name: "B3", default: "1/2", doc: "coefficient of e2^~e2 in d4" },
];

const Y3_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "a4", default: "1", doc: "coefficient of e1^~e1 in d3" },
    ParamSpec { name: "c4", default: "2", doc: "coefficient of e2^~e2 in d3" },
];

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "fam5",
        dim_doc: "complex dimension 5, two-step nilpotent",
        doc: "d1..d4 = 0; d5 = a1 e1^e2 + a2 e1^e3 + a3 e1^e4 + a4 e1^~e1 + a5 e1^~e2 \
              + a6 e1^~e3 + a7 e1^~e4 + b1 e2^e3 + b2 e2^e4 + b3 e2^~e1 + b4 e2^~e2 \
              + b5 e2^~e3 + b6 e2^~e4 + c1 e3^e4 + c2 e3^~e1 + c3 e3^~e2 + c4 e3^~e3 \
              + c5 e3^~e4 + d1 e4^~e1 + d2 e4^~e2 + d3 e4^~e3 + d4 e4^~e4. \
              A published variant duplicates the e1^e3 coefficient where this entry \
              reads a3 e1^e4; the duplicate reading is kept as fam5_literal.",
        params: FAM5_PARAMS,
    },
    CatalogEntry {
        name: "fam5_literal",
        dim_doc: "complex dimension 5, two-step nilpotent",
        doc: "Same family as fam5 except the a3 term multiplies e1^e3, duplicating \
              the a2 monomial, so the e1^e3 coefficient is effectively a2+a3 and \
              e1^e4 is absent.",
        params: FAM5_PARAMS,
    },
    CatalogEntry {
        name: "fam5_blowup",
        dim_doc: "complex dimension 5, two-step nilpotent",
        doc: "d1..d4 = 0; d5 = -a1 e1^e2 + a4 e1^~e1 + b4 e2^~e2 - c1 e3^e4 \
              + c4 e3^~e3 + d4 e4^~e4. The sign convention on the (2,0) terms \
              differs from fam5 by design; both are kept.",
        params: BLOWUP_PARAMS,
    },
    CatalogEntry {
        name: "y3",
        dim_doc: "complex dimension 3, two-step nilpotent",
        doc: "d1 = d2 = 0; d3 = a4 e1^~e1 + c4 e2^~e2. The invariant model of the \
              center submanifold used in the blowup computation.",
        params: Y3_PARAMS,
    },
    CatalogEntry {
        name: "almost4",
        dim_doc: "complex dimension 4, almost complex (non-integrable when a6 or a7 is nonzero)",
        doc: "d1 = d2 = d3 = 0; d4 = a1 e1^e2 + a2 e2^e3 + a3 e1^~e1 + a4 e2^~e2 \
              + a5 e3^~e3 + a6 ~e1^~e2 + a7 ~e2^~e3. A published variant prints the \
              a7 monomial as ~e2^~e2, which is identically zero; this entry uses \
              ~e2^~e3, the reading consistent with the family's dd^c output. Note \
              the displayed two-term dd^c formula for psi^{4~4} assumes a3 = a4 = \
              a5 = 0: nonzero diagonal (1,1) coefficients contribute additional \
              cross terms -2Re(a3 conj(a4)) etc.",
        params: ALMOST4_PARAMS,
    },
    CatalogEntry {
        name: "fps6",
        dim_doc: "complex dimension 3 (six real dimensions)",
        doc: "d1 = d2 = 0; d3 = A ~e1^e2 + B ~e2^e2 + C e1^~e1 + D e1^~e2 + E e1^e2. \
              The Fino-Parton-Salamon family; the diagonal metric is SKT exactly \
              when |A|^2+|D|^2+|E|^2+2Re(conj(B)C) = 0.",
        params: FPS_PARAMS,
    },
    CatalogEntry {
        name: "gen_n",
        dim_doc: "complex dimension n, two-step nilpotent",
        doc: "d1..d(n-1) = 0; dn = sum mIJ eI^~eJ over 1 <= I,J <= n-1. The \
              n-dimensional generalization of the FPS shape; the diagonal metric \
              is SKT when the (1,1) block satisfies the same bracket condition.",
        params: GEN_N_PARAMS,
    },
    CatalogEntry {
        name: "kt_kt",
        dim_doc: "complex dimension 4, product of two primary Kodaira surfaces",
        doc: "d1 = 0; d2 = A e1^~e1; d3 = 0; d4 = B e3^~e3, with A, B nonzero.",
        params: KT_KT_PARAMS,
    },
    CatalogEntry {
        name: "inoue_inoue",
        dim_doc: "complex dimension 4, product of two Inoue surfaces of type S_M (solvable, not nilpotent)",
        doc: "d1 = ((alpha-i*beta)/2i)(e1^e2 - e1^~e2); d2 = -i*alpha e2^~e2; \
              d3 = ((gamma-i*delta)/2i)(e3^e4 - e3^~e4); d4 = -i*gamma e4^~e4. \
              A published display of d3 carries a dangling coefficient with no \
              monomial; this entry resolves it by symmetry with d1.",
        params: INOUE_INOUE_PARAMS,
    },
    CatalogEntry {
        name: "inoue_kt",
        dim_doc: "complex dimension 4, product of an Inoue surface of type S_M and a Kodaira surface (solvable, not nilpotent)",
        doc: "d1 = ((alpha-i*beta)/2i)(e1^e2 - e1^~e2); d2 = -i*alpha e2^~e2; \
              d3 = 0; d4 = (i/2) e3^~e3.",
        params: INOUE_KT_PARAMS,
    },
    CatalogEntry {
        name: "fam4",
        dim_doc: "complex dimension 4, two-step nilpotent, not a product",
        doc: "d1 = d2 = 0; d3 = A e2^~e1; d4 = B1 e1^e2 + B2 e1^~e1 + B3 e2^~e2, \
              with A nonzero. The diagonal metric is SKT exactly when \
              |A|^2+|B1|^2 = 2Re(B2 conj(B3)); a published statement prints |B2|^2 \
              for |B1|^2, which direct expansion contradicts.",
        params: FAM4_PARAMS,
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

fn parse_params(
    entry: &CatalogEntry,
    given: &[(&str, &str)],
) -> Result<BTreeMap<String, Q>, MathError> {
    let mut map: BTreeMap<String, Q> = BTreeMap::new();
    for p in entry.params {
        let v: Q = p.default.parse().map_err(|e| {
            MathError::ConstraintViolation(entry.name.to_string(), format!("bad default: {e}"))
        })?;
        map.insert(p.name.to_string(), v);
    }
    for (k, vs) in given {
        let known = entry.params.iter().any(|p| p.name == *k)
            || (entry.name == "gen_n" && is_gen_n_coeff(k));
        if !known {
            return Err(MathError::ConstraintViolation(
                entry.name.to_string(),
                format!("unknown parameter `{k}`"),
            ));
        }
        let v: Q = vs.parse().map_err(|e| {
            MathError::ConstraintViolation(entry.name.to_string(), format!("parameter {k}: {e}"))
        })?;
        map.insert((*k).to_string(), v);
    }
    Ok(map)
}

fn is_gen_n_coeff(k: &str) -> bool {
    k.len() == 3
        && k.starts_with('m')
        && k[1..].chars().all(|c| c.is_ascii_digit() && c != '0')
}

fn getp(map: &BTreeMap<String, Q>, k: &str) -> Q {
    map.get(k).cloned().unwrap_or_else(Q::zero)
}

fn require_nonzero(entry: &str, name: &str, v: &Q) -> Result<(), MathError> {
    if v.is_zero() {
        Err(MathError::ConstraintViolation(
            entry.to_string(),
            format!("{name} must be nonzero"),
        ))
    } else {
        Ok(())
    }
}

fn require_real(entry: &str, name: &str, v: &Q) -> Result<(), MathError> {
    if !v.is_real() {
        Err(MathError::ConstraintViolation(
            entry.to_string(),
            format!("{name} must be a real rational"),
        ))
    } else {
        Ok(())
    }
}

/// Build a validated presentation from a catalog entry and parameters
/// (names and values in the scalar syntax).
pub fn build(name: &str, params: &[(&str, &str)]) -> Result<StructurePresentation, MathError> {
    let entry = entry(name).ok_or_else(|| MathError::UnknownCatalogEntry(name.to_string()))?;
    let map = parse_params(entry, params)?;
    let pres = match name {
        "fam5" | "fam5_literal" => build_fam5(&map, name == "fam5_literal")?,
        "fam5_blowup" => build_blowup(&map)?,
        "y3" => {
            let n = 3;
            let mut d3 = Form::monomial(n, getp(&map, "a4"), &[1], &[1]);
            d3 = d3.add(&Form::monomial(n, getp(&map, "c4"), &[2], &[2]));
            StructurePresentation::new(n, vec![Form::zero(n), Form::zero(n), d3])?
        }
        "almost4" => build_almost4(&map)?,
        "fps6" => build_fps(&map)?,
        "gen_n" => build_gen_n(&map)?,
        "kt_kt" => {
            let a = getp(&map, "A");
            let b = getp(&map, "B");
            require_nonzero(name, "A", &a)?;
            require_nonzero(name, "B", &b)?;
            let n = 4;
            StructurePresentation::new(
                n,
                vec![
                    Form::zero(n),
                    Form::monomial(n, a, &[1], &[1]),
                    Form::zero(n),
                    Form::monomial(n, b, &[3], &[3]),
                ],
            )?
        }
        "inoue_inoue" => {
            let alpha = getp(&map, "alpha");
            let beta = getp(&map, "beta");
            let gamma = getp(&map, "gamma");
            let delta = getp(&map, "delta");
            require_real(name, "alpha", &alpha)?;
            require_real(name, "beta", &beta)?;
            require_real(name, "gamma", &gamma)?;
            require_real(name, "delta", &delta)?;
            require_nonzero(name, "alpha", &alpha)?;
            require_nonzero(name, "gamma", &gamma)?;
            let n = 4;
            let d1 = inoue_d1(n, 1, 2, &alpha, &beta);
            let d2 = Form::monomial(n, -(Q::i() * alpha), &[2], &[2]);
            let d3 = inoue_d1(n, 3, 4, &gamma, &delta);
            let d4 = Form::monomial(n, -(Q::i() * gamma), &[4], &[4]);
            StructurePresentation::new(n, vec![d1, d2, d3, d4])?
        }
        "inoue_kt" => {
            let alpha = getp(&map, "alpha");
            let beta = getp(&map, "beta");
            require_real(name, "alpha", &alpha)?;
            require_real(name, "beta", &beta)?;
            require_nonzero(name, "alpha", &alpha)?;
            let n = 4;
            let d1 = inoue_d1(n, 1, 2, &alpha, &beta);
            let d2 = Form::monomial(n, -(Q::i() * alpha), &[2], &[2]);
            let d4 = Form::monomial(n, Q::i() * Q::from_ratio(1, 2), &[3], &[3]);
            StructurePresentation::new(n, vec![d1, d2, Form::zero(n), d4])?
        }
        "fam4" => {
            let a = getp(&map, "A");
            require_nonzero(name, "A", &a)?;
            let n = 4;
            let d3 = Form::monomial(n, a, &[2], &[1]);
            let d4 = Form::monomial(n, getp(&map, "B1"), &[1, 2], &[])
                .add(&Form::monomial(n, getp(&map, "B2"), &[1], &[1]))
                .add(&Form::monomial(n, getp(&map, "B3"), &[2], &[2]));
            StructurePresentation::new(n, vec![Form::zero(n), Form::zero(n), d3, d4])?
        }
        _ => unreachable!("entry list and builder list agree"),
    };
    pres.require_valid()?;
    Ok(pres)
}

/// ((alpha - i beta)/2i) (eA^eB - eA^~eB)
fn inoue_d1(n: usize, a: usize, b: usize, alpha: &Q, beta: &Q) -> Form {
    let coeff = &(alpha - &(Q::i() * beta.clone())) / &(Q::i() * Q::from_int(2));
    Form::monomial(n, coeff.clone(), &[a, b], &[])
        .add(&Form::monomial(n, -coeff, &[a], &[b]))
}

fn build_fam5(map: &BTreeMap<String, Q>, literal: bool) -> Result<StructurePresentation, MathError> {
    let n = 5;
    let mut d5 = Form::zero(n);
    let mut add = |c: Q, u: &[usize], b: &[usize]| {
        d5 = d5.add(&Form::monomial(n, c, u, b));
    };
    add(getp(map, "a1"), &[1, 2], &[]);
    add(getp(map, "a2"), &[1, 3], &[]);
    if literal {
        add(getp(map, "a3"), &[1, 3], &[]);
    } else {
        add(getp(map, "a3"), &[1, 4], &[]);
    }
    add(getp(map, "a4"), &[1], &[1]);
    add(getp(map, "a5"), &[1], &[2]);
    add(getp(map, "a6"), &[1], &[3]);
    add(getp(map, "a7"), &[1], &[4]);
    add(getp(map, "b1"), &[2, 3], &[]);
    add(getp(map, "b2"), &[2, 4], &[]);
    add(getp(map, "b3"), &[2], &[1]);
    add(getp(map, "b4"), &[2], &[2]);
    add(getp(map, "b5"), &[2], &[3]);
    add(getp(map, "b6"), &[2], &[4]);
    add(getp(map, "c1"), &[3, 4], &[]);
    add(getp(map, "c2"), &[3], &[1]);
    add(getp(map, "c3"), &[3], &[2]);
    add(getp(map, "c4"), &[3], &[3]);
    add(getp(map, "c5"), &[3], &[4]);
    add(getp(map, "d1"), &[4], &[1]);
    add(getp(map, "d2"), &[4], &[2]);
    add(getp(map, "d3"), &[4], &[3]);
    add(getp(map, "d4"), &[4], &[4]);
    let zeros: Vec<Form> = (0..4).map(|_| Form::zero(n)).collect();
    let mut d = zeros;
    d.push(d5);
    StructurePresentation::new(n, d)
}

fn build_blowup(map: &BTreeMap<String, Q>) -> Result<StructurePresentation, MathError> {
    let n = 5;
    let d5 = Form::monomial(n, -getp(map, "a1"), &[1, 2], &[])
        .add(&Form::monomial(n, getp(map, "a4"), &[1], &[1]))
        .add(&Form::monomial(n, getp(map, "b4"), &[2], &[2]))
        .add(&Form::monomial(n, -getp(map, "c1"), &[3, 4], &[]))
        .add(&Form::monomial(n, getp(map, "c4"), &[3], &[3]))
        .add(&Form::monomial(n, getp(map, "d4"), &[4], &[4]));
    let mut d: Vec<Form> = (0..4).map(|_| Form::zero(n)).collect();
    d.push(d5);
    StructurePresentation::new(n, d)
}

fn build_almost4(map: &BTreeMap<String, Q>) -> Result<StructurePresentation, MathError> {
    let n = 4;
    let d4 = Form::monomial(n, getp(map, "a1"), &[1, 2], &[])
        .add(&Form::monomial(n, getp(map, "a2"), &[2, 3], &[]))
        .add(&Form::monomial(n, getp(map, "a3"), &[1], &[1]))
        .add(&Form::monomial(n, getp(map, "a4"), &[2], &[2]))
        .add(&Form::monomial(n, getp(map, "a5"), &[3], &[3]))
        .add(&Form::monomial(n, getp(map, "a6"), &[], &[1, 2]))
        .add(&Form::monomial(n, getp(map, "a7"), &[], &[2, 3]));
    let mut d: Vec<Form> = (0..3).map(|_| Form::zero(n)).collect();
    d.push(d4);
    StructurePresentation::new(n, d)
}

fn build_fps(map: &BTreeMap<String, Q>) -> Result<StructurePresentation, MathError> {
    let n = 3;
    // ~e1^e2 = -e2^~e1 and ~e2^e2 = -e2^~e2 after canonicalization.
    let d3 = Form::monomial(n, -getp(map, "A"), &[2], &[1])
        .add(&Form::monomial(n, -getp(map, "B"), &[2], &[2]))
        .add(&Form::monomial(n, getp(map, "C"), &[1], &[1]))
        .add(&Form::monomial(n, getp(map, "D"), &[1], &[2]))
        .add(&Form::monomial(n, getp(map, "E"), &[1, 2], &[]));
    StructurePresentation::new(n, vec![Form::zero(n), Form::zero(n), d3])
}

fn build_gen_n(map: &BTreeMap<String, Q>) -> Result<StructurePresentation, MathError> {
    let nq = getp(map, "n");
    if !nq.is_real() || !nq.re.denom().eq(&num::BigInt::from(1)) {
        return Err(MathError::ConstraintViolation(
            "gen_n".into(),
            "n must be an integer".into(),
        ));
    }
    let n: usize = nq
        .re
        .numer()
        .try_into()
        .map_err(|_| MathError::ConstraintViolation("gen_n".into(), "n out of range".into()))?;
    if !(2..=8).contains(&n) {
        return Err(MathError::ConstraintViolation(
            "gen_n".into(),
            "n must lie in 2..=8".into(),
        ));
    }
    let mut dn = Form::zero(n);
    for (k, v) in map {
        if !is_gen_n_coeff(k) || v.is_zero() {
            continue;
        }
        let i = k.as_bytes()[1] as usize - b'0' as usize;
        let j = k.as_bytes()[2] as usize - b'0' as usize;
        if i >= n || j >= n {
            return Err(MathError::ConstraintViolation(
                "gen_n".into(),
                format!("{k} references a coframe index >= n"),
            ));
        }
        dn = dn.add(&Form::monomial(n, v.clone(), &[i], &[j]));
    }
    let mut d: Vec<Form> = (0..n - 1).map(|_| Form::zero(n)).collect();
    d.push(dn);
    StructurePresentation::new(n, d)
}

pub fn build_with_defaults(name: &str) -> Result<StructurePresentation, MathError> {
    build(name, &[])
}
