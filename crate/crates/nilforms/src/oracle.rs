//! Independent brute-force reimplementations used as oracles by the test
//! suites. These share only the scalar and monomial types with the engine:
//! the Leibniz expansion, sign bookkeeping, and rank computations are all
//! separate code paths.

use crate::cohomology::Kind;
use crate::form::{Form, Monomial};
use crate::scalar::Q;
use crate::structure::StructurePresentation;
use std::collections::BTreeMap;

/// A factor of a monomial: 1-based coframe index, barred flag.
type Factor = (usize, bool);

/// Sort a factor list into canonical order (unbarred ascending, then barred
/// ascending) by bubble sort, counting transpositions; None on duplicates.
fn sort_factors(mut v: Vec<Factor>) -> Option<(Vec<Factor>, i64)> {
    let key = |f: &Factor| (f.1, f.0);
    let mut sign = 1i64;
    let len = v.len();
    for i in 0..len {
        for j in 0..len.saturating_sub(i + 1) {
            if key(&v[j]) > key(&v[j + 1]) {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

fn monomial_factors(m: &Monomial) -> Vec<Factor> {
    let mut v: Vec<Factor> = m.unbarred_indices().into_iter().map(|i| (i, false)).collect();
    v.extend(m.barred_indices().into_iter().map(|i| (i, true)));
    v
}

fn factors_to_monomial(v: &[Factor]) -> Monomial {
    let mut u = 0u32;
    let mut b = 0u32;
    for &(i, barred) in v {
        if barred {
            b |= 1 << (i - 1);
        } else {
            u |= 1 << (i - 1);
        }
    }
    Monomial { unbarred: u, barred: b }
}

/// Read the generator differentials off the presentation as coefficient
/// tables (monomial type only, no Form arithmetic reused downstream).
fn generator_table(pres: &StructurePresentation) -> Vec<Vec<(Q, Vec<Factor>)>> {
    let n = pres.dim();
    let mut table = Vec::with_capacity(2 * n);
    for i in 1..=n {
        let mut terms = Vec::new();
        for (m, c) in pres.d_generator(i).terms() {
            terms.push((c.clone(), monomial_factors(m)));
        }
        table.push(terms);
    }
    for i in 1..=n {
        let mut terms = Vec::new();
        for (m, c) in pres.d_generator_bar(i).terms() {
            terms.push((c.clone(), monomial_factors(m)));
        }
        table.push(terms);
    }
    table
}

fn table_index(n: usize, f: &Factor) -> usize {
    if f.1 {
        n + f.0 - 1
    } else {
        f.0 - 1
    }
}

/// Term-by-term Leibniz expansion of the Chevalley-Eilenberg differential
/// with explicit list-based sign bookkeeping.
pub fn naive_d(pres: &StructurePresentation, f: &Form) -> Form {
    let n = pres.dim();
    let table = generator_table(pres);
    let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
    for (m, c) in f.terms() {
        let factors = monomial_factors(m);
        for t in 0..factors.len() {
            let leibniz_sign = if t % 2 == 0 { 1i64 } else { -1 };
            for (gc, gfactors) in &table[table_index(n, &factors[t])] {
                // prefix ++ d(generator) ++ suffix, then canonicalize.
                let mut concat: Vec<Factor> = factors[..t].to_vec();
                concat.extend(gfactors.iter().copied());
                concat.extend(factors[t + 1..].iter().copied());
                let Some((sorted, sort_sign)) = sort_factors(concat) else {
                    continue;
                };
                let total = leibniz_sign * sort_sign;
                let mut coeff = c * gc;
                if total < 0 {
                    coeff = -coeff;
                }
                let key = factors_to_monomial(&sorted);
                let entry = acc.entry(key).or_insert_with(Q::zero);
                *entry += &coeff;
            }
        }
    }
    let mut out = Form::zero(n);
    for (m, c) in acc {
        out.add_term(m, c);
    }
    out
}

/// naive d^c = J^{-1} d J through the oracle differential.
pub fn naive_ddc(pres: &StructurePresentation, f: &Form) -> Form {
    let n = pres.dim();
    let j = |g: &Form, inverse: bool| -> Form {
        let mut out = Form::zero(n);
        for (p, q) in g.bidegrees() {
            let e = if inverse { q as i64 - p as i64 } else { p as i64 - q as i64 };
            out = out.add(&g.project(p, q).scale(&Q::i_pow(e)));
        }
        out
    };
    naive_d(pres, &j(&naive_d(pres, &j(f, false)), true))
}

/// Independent rank computation: fraction-exact forward elimination on a
/// row list, no shared code with linalg.
fn row_rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_inv = rows[rank][c].inv();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let factor = &rows[r][c] * &pivot_inv;
                for k in c..cols {
                    let sub = &factor * &rows[rank][k];
                    rows[r][k] -= &sub;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Apply naive_d to every basis monomial of (p,q) and keep the component in
/// (p+dp, q+dq), as coordinate rows over the target basis.
fn naive_component_columns(
    pres: &StructurePresentation,
    p: usize,
    q: usize,
    dp: i64,
    dq: i64,
    second: Option<(i64, i64)>,
) -> Vec<Vec<Q>> {
    let n = pres.dim();
    let src = crate::form::basis_monomials(n, p, q);
    let tp1 = p as i64 + dp;
    let tq1 = q as i64 + dq;
    let (tp, tq) = match second {
        None => (tp1, tq1),
        Some((dp2, dq2)) => (tp1 + dp2, tq1 + dq2),
    };
    if tp < 0 || tq < 0 || tp as usize > n || tq as usize > n {
        return src.iter().map(|_| Vec::new()).collect();
    }
    let tgt = crate::form::basis_monomials(n, tp as usize, tq as usize);
    let index: BTreeMap<Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut cols = Vec::with_capacity(src.len());
    for m in &src {
        let mut f = Form::zero(n);
        f.add_term(*m, Q::one());
        let mut img = naive_d(pres, &f);
        if tp1 >= 0 && tq1 >= 0 && tp1 as usize <= n && tq1 as usize <= n {
            img = img.project(tp1 as usize, tq1 as usize);
        } else {
            img = Form::zero(n);
        }
        if second.is_some() {
            img = naive_d(pres, &img).project(tp as usize, tq as usize);
        }
        let mut v = vec![Q::zero(); tgt.len()];
        for (mm, c) in img.terms() {
            v[index[mm]] = c.clone();
        }
        cols.push(v);
    }
    cols
}

fn rank_of_columns(cols: &[Vec<Q>]) -> usize {
    // rank of the column span = rank of the transposed row list
    let rows: Vec<Vec<Q>> = cols.iter().filter(|c| !c.is_empty()).cloned().collect();
    row_rank(rows)
}

fn joint_kernel_dim(col_sets: &[Vec<Vec<Q>>], src_dim: usize) -> usize {
    // Stack the operators: a column per source monomial, concatenated targets.
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for j in 0..src_dim {
        let mut big = Vec::new();
        for set in col_sets {
            big.extend(set[j].iter().cloned());
        }
        rows.push(big);
    }
    src_dim - row_rank(rows)
}

/// Quotient dimensions by direct rank-nullity on the defining quotients, no
/// harmonic theory involved.
pub fn quotient_dim_bruteforce(
    pres: &StructurePresentation,
    kind: Kind,
    p: usize,
    q: usize,
) -> usize {
    let n = pres.dim();
    let src_dim = crate::form::basis_monomials(n, p, q).len();
    match kind {
        Kind::DeRham => {
            // keyed by total degree p; brute force over the full degree space
            let k = p;
            let src = crate::form::basis_monomials_degree(n, k);
            let tgt = crate::form::basis_monomials_degree(n, k + 1);
            let index: BTreeMap<Monomial, usize> =
                tgt.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut rows = Vec::new();
            for m in &src {
                let mut f = Form::zero(n);
                f.add_term(*m, Q::one());
                let img = naive_d(pres, &f);
                let mut v = vec![Q::zero(); tgt.len()];
                for (mm, c) in img.terms() {
                    v[index[mm]] = c.clone();
                }
                rows.push(v);
            }
            let rank_k = row_rank(rows);
            let rank_prev = if k == 0 {
                0
            } else {
                let srcp = crate::form::basis_monomials_degree(n, k - 1);
                let index2: BTreeMap<Monomial, usize> =
                    src.iter().enumerate().map(|(i, m)| (*m, i)).collect();
                let mut rows2 = Vec::new();
                for m in &srcp {
                    let mut f = Form::zero(n);
                    f.add_term(*m, Q::one());
                    let img = naive_d(pres, &f);
                    let mut v = vec![Q::zero(); src.len()];
                    for (mm, c) in img.terms() {
                        v[index2[mm]] = c.clone();
                    }
                    rows2.push(v);
                }
                row_rank(rows2)
            };
            src.len() - rank_k - rank_prev
        }
        Kind::Dolbeault => {
            let delbar_here = naive_component_columns(pres, p, q, 0, 1, None);
            let ker = joint_kernel_dim(&[delbar_here], src_dim);
            let im = if q == 0 {
                0
            } else {
                rank_of_columns(&naive_component_columns(pres, p, q - 1, 0, 1, None))
            };
            ker - im
        }
        Kind::BottChern => {
            let del_here = naive_component_columns(pres, p, q, 1, 0, None);
            let delbar_here = naive_component_columns(pres, p, q, 0, 1, None);
            let ker = joint_kernel_dim(&[del_here, delbar_here], src_dim);
            let im = if p == 0 || q == 0 {
                0
            } else {
                rank_of_columns(&naive_component_columns(pres, p - 1, q - 1, 0, 1, Some((1, 0))))
            };
            ker - im
        }
        Kind::Aeppli => {
            let dd_here = naive_component_columns(pres, p, q, 0, 1, Some((1, 0)));
            let ker = joint_kernel_dim(&[dd_here], src_dim);
            let mut image_cols: Vec<Vec<Q>> = Vec::new();
            if p > 0 {
                image_cols.extend(naive_component_columns(pres, p - 1, q, 1, 0, None));
            }
            if q > 0 {
                image_cols.extend(naive_component_columns(pres, p, q - 1, 0, 1, None));
            }
            ker - rank_of_columns(&image_cols)
        }
    }
}
