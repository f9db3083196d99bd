//! The bigraded exterior algebra on a (1,0)-coframe η¹..ηⁿ and its conjugates.
//!
//! Monomials are pairs of index bitmasks (unbarred factors first, ascending,
//! then barred ascending); every permutation sign is absorbed into the
//! coefficient at construction time, so equality of forms is equality of
//! coefficient maps.

use crate::error::MathError;
use crate::scalar::Q;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub const MAX_DIM: usize = 32;

/// A canonical basis monomial η^{i₁..i_p} ∧ η̄^{j₁..j_q}, as two bitmasks.
/// Bit k set means index k+1 participates.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub unbarred: u32,
    pub barred: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { unbarred: 0, barred: 0 };

    pub fn bidegree(&self) -> (usize, usize) {
        (self.unbarred.count_ones() as usize, self.barred.count_ones() as usize)
    }

    pub fn degree(&self) -> usize {
        let (p, q) = self.bidegree();
        p + q
    }

    /// Indices (1-based, ascending) of the unbarred part.
    pub fn unbarred_indices(&self) -> Vec<usize> {
        bits(self.unbarred)
    }

    pub fn barred_indices(&self) -> Vec<usize> {
        bits(self.barred)
    }

    /// All factors in canonical order: (index, is_barred).
    pub fn factors(&self) -> Vec<(usize, bool)> {
        let mut v: Vec<(usize, bool)> = bits(self.unbarred).into_iter().map(|i| (i, false)).collect();
        v.extend(bits(self.barred).into_iter().map(|i| (i, true)));
        v
    }
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).collect()
}

/// Number of pairs (x, y), x in `a`, y in `b`, with x > y: the inversion
/// count when the sorted list of `a` is concatenated with the sorted list
/// of `b` and then merged.
fn merge_inversions(a: u32, b: u32) -> u32 {
    let mut count = 0;
    let mut bb = b;
    while bb != 0 {
        let y = bb.trailing_zeros();
        // Elements of a strictly above position y.
        count += (a & !((1u32 << (y + 1)) - 1)).count_ones();
        bb &= bb - 1;
    }
    count
}

/// Wedge of two canonical monomials: None on a repeated factor, otherwise
/// the merged monomial with the permutation sign (+1/-1).
pub fn wedge_monomials(a: &Monomial, b: &Monomial) -> Option<(Monomial, i32)> {
    if a.unbarred & b.unbarred != 0 || a.barred & b.barred != 0 {
        return None;
    }
    // Concatenated order: a.u, a.b, b.u, b.b.  Sorting to u-merged, b-merged:
    //   b.u passes all of a.b (|a.b|*|b.u| transpositions),
    //   plus inversions inside each merge.
    let crossings = a.barred.count_ones() * b.unbarred.count_ones()
        + merge_inversions(a.unbarred, b.unbarred)
        + merge_inversions(a.barred, b.barred);
    let sign = if crossings % 2 == 0 { 1 } else { -1 };
    Some((Monomial { unbarred: a.unbarred | b.unbarred, barred: a.barred | b.barred }, sign))
}

/// A sparse element of Λ^{•,•}: dimension plus a map monomial -> coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension above {MAX_DIM}");
        Form { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        let mut f = Form::zero(dim);
        f.add_term(Monomial::ONE, c);
        f
    }

    pub fn one(dim: usize) -> Self {
        Form::constant(dim, Q::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Build a monomial with coefficient from 1-based index slices (must be
    /// strictly ascending; that is the canonical presentation).
    pub fn monomial(dim: usize, coeff: Q, unbarred: &[usize], barred: &[usize]) -> Self {
        let mut f = Form::zero(dim);
        let mut um = 0u32;
        for &i in unbarred {
            assert!(i >= 1 && i <= dim, "index out of range");
            assert!(um & (1 << (i - 1)) == 0, "repeated index");
            assert!(um < (1 << (i - 1)), "indices must be ascending");
            um |= 1 << (i - 1);
        }
        let mut bm = 0u32;
        for &j in barred {
            assert!(j >= 1 && j <= dim, "index out of range");
            assert!(bm & (1 << (j - 1)) == 0, "repeated index");
            assert!(bm < (1 << (j - 1)), "indices must be ascending");
            bm |= 1 << (j - 1);
        }
        f.add_term(Monomial { unbarred: um, barred: bm }, coeff);
        f
    }

    /// Wedge a list of possibly unsorted single factors, absorbing the
    /// permutation sign; duplicated factors give zero.
    pub fn from_factors(dim: usize, coeff: Q, factors: &[(usize, bool)]) -> Self {
        let mut acc = Form::constant(dim, coeff);
        for &(i, barred) in factors {
            let gen = if barred {
                Form::monomial(dim, Q::one(), &[], &[i])
            } else {
                Form::monomial(dim, Q::one(), &[i], &[])
            };
            acc = acc.wedge(&gen).expect("same dimension");
            if acc.is_zero() {
                return acc;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Form::zero(self.dim);
        }
        let mut out = Form::zero(self.dim);
        for (m, v) in &self.terms {
            out.terms.insert(*m, v * c);
        }
        out
    }

    pub fn add(&self, other: &Form) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Form::zero(self.dim);
        for (m, c) in &self.terms {
            out.terms.insert(*m, -c);
        }
        out
    }

    /// Graded-bilinear wedge product.
    pub fn wedge(&self, other: &Form) -> Result<Form, MathError> {
        if self.dim != other.dim {
            return Err(MathError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Form::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, s)) = wedge_monomials(ma, mb) {
                    let mut c = ca * cb;
                    if s < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    /// Antilinear conjugation: swaps bidegrees (p,q) <-> (q,p).
    pub fn conjugate(&self) -> Self {
        let mut out = Form::zero(self.dim);
        for (m, c) in &self.terms {
            let (p, q) = m.bidegree();
            // conj(η^I ∧ η̄^J) = η̄^I ∧ η^J = (-1)^{pq} η^J ∧ η̄^I.
            let sign = if (p * q) % 2 == 0 { Q::one() } else { -Q::one() };
            out.add_term(Monomial { unbarred: m.barred, barred: m.unbarred }, c.conj() * sign);
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// The set of bidegrees present.
    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(|m| m.bidegree()).collect()
    }

    /// Projection onto the (p,q)-component. Idempotent; summing over all
    /// bidegrees gives back the form.
    pub fn project(&self, p: usize, q: usize) -> Form {
        let mut out = Form::zero(self.dim);
        for (m, c) in &self.terms {
            if m.bidegree() == (p, q) {
                out.terms.insert(*m, c.clone());
            }
        }
        out
    }

    /// Projection onto total degree k.
    pub fn project_degree(&self, k: usize) -> Form {
        let mut out = Form::zero(self.dim);
        for (m, c) in &self.terms {
            if m.degree() == k {
                out.terms.insert(*m, c.clone());
            }
        }
        out
    }

    /// Some(p,q) when every monomial has the same bidegree (zero counts as
    /// pure of any bidegree and returns None).
    pub fn pure_bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?.bidegree();
        for m in it {
            if m.bidegree() != first {
                return None;
            }
        }
        Some(first)
    }

    /// σ_p η ∧ conj(η) for η of pure bidegree (p,0), with σ_p = i^{p²}2^{−p}.
    /// The result is a real (p,p)-form.
    pub fn sigma_real(&self) -> Result<Form, MathError> {
        if self.is_zero() {
            return Ok(Form::zero(self.dim));
        }
        let (p, q) = self.pure_bidegree().ok_or(MathError::NotPure)?;
        if q != 0 {
            return Err(MathError::BidegreeMismatch(p, 0));
        }
        let sigma = sigma_factor(p);
        Ok(self.wedge(&self.conjugate())?.scale(&sigma))
    }
}

/// σ_p = i^{p²} 2^{−p}.
pub fn sigma_factor(p: usize) -> Q {
    let mut half_pow = Q::one();
    for _ in 0..p {
        half_pow = half_pow * Q::from_ratio(1, 2);
    }
    Q::i_pow((p * p) as i64) * half_pow
}

/// All monomials of bidegree (p,q) in dimension n, ascending in the
/// (unbarred, barred) mask order. This fixes the coordinate bases used by
/// every operator matrix.
pub fn basis_monomials(n: usize, p: usize, q: usize) -> Vec<Monomial> {
    let us = subsets_of_size(n, p);
    let bs = subsets_of_size(n, q);
    let mut out = Vec::with_capacity(us.len() * bs.len());
    for &u in &us {
        for &b in &bs {
            out.push(Monomial { unbarred: u, barred: b });
        }
    }
    out.sort();
    out
}

/// All monomials of total degree k.
pub fn basis_monomials_degree(n: usize, k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for p in 0..=k.min(n) {
        let q = k - p;
        if q <= n {
            out.extend(basis_monomials(n, p, q));
        }
    }
    out.sort();
    out
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push(mask);
        }
    }
    out
}

/// Coordinates of a form in the given monomial basis; the form must be
/// supported on the basis.
pub fn form_to_coords(f: &Form, basis: &[Monomial]) -> Vec<Q> {
    let index: BTreeMap<Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut v = vec![Q::zero(); basis.len()];
    for (m, c) in f.terms() {
        let i = *index.get(m).expect("form not supported on basis");
        v[i] = c.clone();
    }
    v
}

pub fn coords_to_form(n: usize, coords: &[Q], basis: &[Monomial]) -> Form {
    assert_eq!(coords.len(), basis.len());
    let mut f = Form::zero(n);
    for (c, m) in coords.iter().zip(basis) {
        f.add_term(*m, c.clone());
    }
    f
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for i in self.unbarred_indices() {
            parts.push(format!("e{i}"));
        }
        for j in self.barred_indices() {
            parts.push(format!("~e{j}"));
        }
        write!(f, "{}", parts.join("^"))
    }
}

/// Textual syntax: `coeff*monomial` terms joined by ` + `, with coefficients
/// as `(re,im)` pairs; parse_form in the parse module reads this back.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({},{})", rat_display(&c.re), rat_display(&c.im))?;
            if *m != Monomial::ONE {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

fn rat_display(r: &num::BigRational) -> String {
    use num::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
