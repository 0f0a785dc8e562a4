use super::intpoly::IntPoly;
use crate::error::{Error, Result};
use crate::mp::MpComplex;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

/// Which variable of a bivariate polynomial an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    A,
    B,
}

/// Dense bivariate polynomial over the integers, stored as a polynomial in b
/// whose coefficients are integer polynomials in a.  `coeffs[j]` is the
/// coefficient of b^j; no trailing zero coefficients; zero is the empty
/// vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<IntPoly>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        BiPoly { coeffs: vec![IntPoly::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![IntPoly::constant(c)])
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::A => Self::new(vec![IntPoly::var()]),
            Var::B => Self::new(vec![IntPoly::zero(), IntPoly::one()]),
        }
    }

    /// Lift a univariate polynomial in the given variable.
    pub fn from_poly(p: &IntPoly, v: Var) -> Self {
        match v {
            Var::A => Self::new(vec![p.clone()]),
            Var::B => Self::new(p.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect()),
        }
    }

    /// grid[j][i] is the coefficient of a^i b^j.
    pub fn from_grid(grid: &[&[i64]]) -> Self {
        Self::new(grid.iter().map(|row| IntPoly::from_i64(row)).collect())
    }

    pub fn coeffs_b(&self) -> &[IntPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_b(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn degree_a(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    /// Total degree, taking a and b each with weight one.
    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.degree().map(|d| d + j))
            .max()
    }

    pub fn degree_in(&self, v: Var) -> Option<usize> {
        match v {
            Var::A => self.degree_a(),
            Var::B => self.degree_b(),
        }
    }

    pub fn lead_coeff_b(&self) -> &IntPoly {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn neg(&self) -> Self {
        BiPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = IntPoly::zero();
            if let Some(a) = self.coeffs.get(i) {
                c = c.add(a);
            }
            if let Some(b) = other.coeffs.get(i) {
                c = c.add(b);
            }
            out.push(c);
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![IntPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    /// Multiply every b-coefficient by a polynomial in a.
    pub fn scale_poly_a(&self, p: &IntPoly) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    /// Multiply by b^k.
    pub fn shift_b(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![IntPoly::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        BiPoly { coeffs: c }
    }

    /// Exchange the roles of a and b.
    pub fn swap_vars(&self) -> Self {
        let da = match self.degree_a() {
            None if self.is_zero() => return Self::zero(),
            None => 0,
            Some(d) => d,
        };
        let mut grid = vec![vec![BigInt::from(0); self.coeffs.len()]; da + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            for (i, v) in c.coeffs().iter().enumerate() {
                grid[i][j] = v.clone();
            }
        }
        Self::new(grid.into_iter().map(IntPoly::new).collect())
    }

    pub fn eval_complex(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        let prec = a.prec().max(b.prec());
        let mut acc = MpComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(b).add(&c.eval_complex(a));
        }
        acc
    }

    /// Substitute a numeric value for a, returning the coefficients (in b,
    /// ascending) of the resulting univariate complex polynomial.
    pub fn substitute_a(&self, a: &MpComplex) -> Vec<MpComplex> {
        self.coeffs.iter().map(|c| c.eval_complex(a)).collect()
    }

    /// Substitute an exact integer value for b, returning a polynomial in a.
    pub fn substitute_b_int(&self, b: &BigInt) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(b).add(c);
        }
        acc
    }

    /// Content with respect to b: the gcd in Z[a] of the b-coefficients.
    pub fn content_b(&self) -> IntPoly {
        let mut g = IntPoly::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.degree() == Some(0) && g.coeff(0).abs() == BigInt::from(1) {
                break;
            }
        }
        g
    }

    /// Divide out content_b and normalize the sign so the leading coefficient
    /// of the leading b-coefficient is positive.
    pub fn primitive_b(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content_b();
        let mut out: Vec<IntPoly> = self
            .coeffs
            .iter()
            .map(|c| c.div_exact(&g).expect("content divides every coefficient"))
            .collect();
        if out.last().unwrap().leading().is_negative() {
            out = out.into_iter().map(|c| c.neg()).collect();
        }
        Self::new(out)
    }

    /// Pseudo-remainder with respect to b (coefficients in Z[a]).  Only used
    /// inside the primitive remainder sequence, where the exact scaling power
    /// is irrelevant because contents are stripped immediately afterwards.
    fn pseudo_rem_b(&self, d: &Self) -> Self {
        let dd = d.degree_b().expect("pseudo_rem by zero polynomial");
        let lc = d.lead_coeff_b().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree_b() {
            if dr < dd {
                break;
            }
            let lead = r.lead_coeff_b().clone();
            r = r.scale_poly_a(&lc).sub(&d.shift_b(dr - dd).scale_poly_a(&lead));
        }
        r
    }

    /// Exact division in Z[a][b]: Some(q) when self = q * d exactly.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let nd = self.degree_b().unwrap();
        let dd = d.degree_b().unwrap();
        if nd < dd {
            return None;
        }
        let lc = d.lead_coeff_b();
        let mut rem = self.coeffs.clone();
        let mut q = vec![IntPoly::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let quo = top.div_exact(lc)?;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&quo.mul(dc));
            }
            q[k] = quo;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// Bit length of the largest integer coefficient magnitude.
    fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.max_coeff_bits()).max().unwrap_or(0)
    }

    /// GCD in Z[a,b] (primitive, sign-normalized).  The fast path evaluates
    /// b at a power of two well above the coefficient sizes, takes a
    /// univariate gcd in a, reconstructs a candidate from balanced radix
    /// digits, and verifies it by exact division; with that radix a verified
    /// candidate is provably the gcd (a nonconstant cofactor would need a
    /// coefficient above half the radix to evaluate to a unit).  When the
    /// evaluation gcd picks up a spurious integer factor the verification
    /// fails and the radix grows; after a few misses the primitive
    /// pseudo-remainder sequence decides instead.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_sign();
        }
        if other.is_zero() {
            return self.primitive_sign();
        }
        if let Some(g) = self.gcd_by_evaluation(other) {
            return g;
        }
        self.gcd_prs(other)
    }

    fn gcd_by_evaluation(&self, other: &Self) -> Option<Self> {
        if self.degree_b() == Some(0) || other.degree_b() == Some(0) {
            return None; // the remainder sequence resolves these immediately
        }
        let bound = |f: &Self| f.max_coeff_bits() + f.total_degree().unwrap_or(0) as u64;
        let mut bits = bound(self).min(bound(other)) + 8;
        for _ in 0..3 {
            let xi = BigInt::from(1) << (bits as usize);
            let pv = self.substitute_b_int(&xi);
            let qv = other.substitute_b_int(&xi);
            if !pv.is_zero() && !qv.is_zero() {
                let gv = super::intpoly::heu_gcd(&pv, &qv);
                let cand = Self::from_balanced_digits(&gv, bits).primitive_sign();
                if !cand.is_zero()
                    && self.div_exact(&cand).is_some()
                    && other.div_exact(&cand).is_some()
                {
                    return Some(cand);
                }
            }
            bits = bits * 2 + 7;
        }
        None
    }

    /// Reinterpret each coefficient of a univariate polynomial in a as a
    /// balanced radix-2^bits expansion over powers of b.  Inverts
    /// `substitute_b_int` at 2^bits for polynomials whose coefficients stay
    /// below half the radix.
    fn from_balanced_digits(g: &IntPoly, bits: u64) -> Self {
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for (i, c) in g.coeffs().iter().enumerate() {
            let digits = super::intpoly::poly_from_balanced_digits(c, bits);
            for (j, d) in digits.coeffs().iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                if cols.len() <= j {
                    cols.resize(j + 1, Vec::new());
                }
                let col = &mut cols[j];
                if col.len() <= i {
                    col.resize(i + 1, BigInt::from(0));
                }
                col[i] = d.clone();
            }
        }
        Self::new(cols.into_iter().map(IntPoly::new).collect())
    }

    /// The primitive pseudo-remainder sequence: the content part is a gcd of
    /// univariate contents, the primitive part comes from the sequence in b.
    fn gcd_prs(&self, other: &Self) -> Self {
        let cont = self.content_b().gcd(&other.content_b());
        let mut a = self.primitive_b();
        let mut b = other.primitive_b();
        if a.degree_b() < b.degree_b() {
            std::mem::swap(&mut a, &mut b);
        }
        let pp = loop {
            if b.is_zero() {
                break a;
            }
            if b.degree_b() == Some(0) {
                // Primitive polynomials sharing only a b-degree-0 divisor are
                // coprime as primitives.
                break Self::one();
            }
            let r = a.pseudo_rem_b(&b).primitive_b();
            a = b;
            b = r;
        };
        pp.scale_poly_a(&cont).primitive_sign()
    }

    /// Sign normalization only (leading coefficient of the leading b-coeff
    /// positive), keeping content.
    fn primitive_sign(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if self.lead_coeff_b().leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

/// Resultant of two bivariate polynomials with respect to the eliminated
/// variable, as a univariate polynomial in the other variable.  Computed as
/// the determinant of the Sylvester matrix by fraction-free elimination, so
/// every intermediate division is exact.
pub fn resultant(p: &BiPoly, q: &BiPoly, eliminate: Var) -> Result<IntPoly> {
    let (p, q) = match eliminate {
        Var::B => (p.clone(), q.clone()),
        Var::A => (p.swap_vars(), q.swap_vars()),
    };
    let m = p.degree_b().unwrap_or(0);
    let n = q.degree_b().unwrap_or(0);
    if m == 0 || n == 0 {
        return Err(Error::DegenerateInput(
            "resultant requires both polynomials to be non-constant in the eliminated variable"
                .into(),
        ));
    }
    let size = m + n;
    let mut mat = vec![vec![IntPoly::zero(); size]; size];
    for i in 0..n {
        for (k, c) in p.coeffs_b().iter().enumerate() {
            // descending order across the row: column i + (m - k)
            mat[i][i + m - k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in q.coeffs_b().iter().enumerate() {
            mat[n + i][i + n - k] = c.clone();
        }
    }
    // Content-normalized: the spectral information lives in the primitive part.
    Ok(bareiss_det(mat).primitive_positive())
}

/// Fraction-free determinant of a square matrix with integer-polynomial
/// entries (Bareiss).  Divisions by the previous pivot are exact.
pub fn bareiss_det(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    for row in &m {
        assert_eq!(row.len(), n, "determinant of non-square matrix");
    }
    let mut sign = 1i32;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return IntPoly::zero(),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&pivot).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t
                    .div_exact(&prev)
                    .expect("fraction-free elimination step divides exactly");
            }
            m[i][k] = IntPoly::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{}", c)?;
            } else if c.is_constant() && c.coeff(0) == BigInt::from(1) {
                write!(f, "b^{}", j)?;
            } else {
                write!(f, "({})*b^{}", c, j)?;
            }
        }
        Ok(())
    }
}
