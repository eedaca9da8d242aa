use super::{FieldSpec, Scalar};

/// Moduli up to this bound are scanned exhaustively for roots.
const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// Dense univariate polynomial, coefficients from the constant term upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Scalar::ONE] }
    }

    /// `x - r`
    pub fn linear(field: &FieldSpec, r: Scalar) -> Self {
        Poly::new(vec![field.neg(r), Scalar::ONE])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, field: &FieldSpec, x: Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn mul(&self, field: &FieldSpec, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, field: &FieldSpec, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(Scalar::ZERO);
        Poly::new((0..n).map(|i| field.sub(get(self, i), get(other, i))).collect())
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, field: &FieldSpec, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.coeffs[dd]);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Scalar::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = field.mul(rem[k + dd], lead_inv);
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = field.sub(rem[k + j], field.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self, field: &FieldSpec) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(&lead) => {
                let inv = field.inv(lead);
                Poly::new(self.coeffs.iter().map(|&c| field.mul(c, inv)).collect())
            }
        }
    }

    pub fn gcd(&self, field: &FieldSpec, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    fn pow_mod(&self, field: &FieldSpec, mut exp: u64, modulus: &Poly) -> Poly {
        let mut base = self.div_rem(field, modulus).1;
        let mut acc = Poly::one().div_rem(field, modulus).1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(field, &base).div_rem(field, modulus).1;
            }
            base = base.mul(field, &base).div_rem(field, modulus).1;
            exp >>= 1;
        }
        acc
    }
}

/// Roots of a polynomial over the field, listed with multiplicity in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    pub roots: Vec<Scalar>,
    /// Whether the polynomial is a product of linear factors over the field.
    pub splits: bool,
}

/// All roots of a nonzero polynomial in `F_p`.
///
/// Small moduli are scanned exhaustively; larger ones use distinct-degree
/// extraction followed by equal-degree splitting.
pub fn roots_in_field(field: &FieldSpec, poly: &Poly) -> RootReport {
    assert!(!poly.is_zero(), "roots of the zero polynomial");
    let mut rest = poly.monic(field);
    let mut roots = Vec::new();
    let candidates = if field.p() <= EXHAUSTIVE_LIMIT {
        if rest.degree() == Some(0) {
            Vec::new()
        } else {
            field.elements().filter(|&r| rest.eval(field, r).is_zero()).collect()
        }
    } else {
        distinct_roots(field, &rest)
    };
    for r in candidates {
        let lin = Poly::linear(field, r);
        loop {
            let (q, rem) = rest.div_rem(field, &lin);
            if !rem.is_zero() {
                break;
            }
            roots.push(r);
            rest = q;
        }
    }
    roots.sort();
    RootReport { roots, splits: rest.degree() == Some(0) }
}

fn distinct_roots(field: &FieldSpec, f: &Poly) -> Vec<Scalar> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = Poly::new(vec![Scalar::ZERO, Scalar::ONE]);
    let xp = x.pow_mod(field, field.p(), f);
    let g = f.gcd(field, &xp.sub(field, &x));
    let mut out = Vec::new();
    split_linear(field, g, &mut out);
    out.sort();
    out
}

/// Splits a squarefree product of distinct linear factors.
fn split_linear(field: &FieldSpec, g: Poly, out: &mut Vec<Scalar>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(field.neg(g.monic(field).coeffs[0])),
        Some(d) => {
            let half = (field.p() - 1) / 2;
            for shift in 0..field.p() {
                let probe = Poly::new(vec![Scalar(shift), Scalar::ONE]);
                let h = probe.pow_mod(field, half, &g).sub(field, &Poly::one()).gcd(field, &g);
                let dh = h.degree().unwrap_or(0);
                if dh > 0 && dh < d {
                    let (q, _) = g.div_rem(field, &h);
                    split_linear(field, h, out);
                    split_linear(field, q, out);
                    return;
                }
            }
            unreachable!("equal-degree splitting failed on a product of distinct linear factors");
        }
    }
}
