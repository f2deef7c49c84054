use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::dd::CDd;
use super::poly::{self, Poly};
use super::{times_minus_i, AlgebraError, PolyExpElement};

const I: Complex64 = Complex64::new(0.0, 1.0);

impl PolyExpElement {
    /// Multiplication by `X_t`: each `p(x) 𝓔_c` becomes `x p(x) 𝓔_c`.
    pub fn apply_x(&self) -> Self {
        // Raising the degree keeps the canonical invariants intact.
        Self::from_terms(self.q(), self.terms().iter().map(|t| (t.exponent(), poly::shift_up(t.poly()))))
            .expect("shifting a canonical element stays finite")
    }

    /// `D = q ∂/∂x`: `p 𝓔_c ↦ q (p' + c p) 𝓔_c`, so `D 𝓔_c = c q 𝓔_c`.
    pub fn apply_d(&self) -> Result<Self, AlgebraError> {
        let q = self.q().get();
        Self::from_terms(self.q(), self.terms().iter().map(|t| (t.exponent(), d_poly(t.poly(), t.exponent(), q))))
    }

    /// `D* = X - D`: `p 𝓔_c ↦ (x p - q p' - c q p) 𝓔_c`, the raising
    /// operator. In particular `D* 𝓔_c = (x - cq) 𝓔_c` and `D* H_n = H_{n+1}`.
    pub fn apply_d_star(&self) -> Result<Self, AlgebraError> {
        let q = self.q().get();
        Self::from_terms(
            self.q(),
            self.terms()
                .iter()
                .map(|t| (t.exponent(), poly::sub(&poly::shift_up(t.poly()), &d_poly(t.poly(), t.exponent(), q)))),
        )
    }

    /// The unitary `𝒢`, with `𝒢 𝓔_c = 𝓔_{-ic}`.
    ///
    /// Writing `x^n 𝓔_c` as the `n`-th `r`-derivative at 0 of
    /// `e^{r² q / 2 + r c q} 𝓔_{r+c}` and applying `𝒢` inside gives
    /// `𝒢(x^n 𝓔_c) = P_n(x) 𝓔_{-ic}` with `P_n = n! [r^n] exp(q r² + (2cq - ix) r)`,
    /// i.e. `P_0 = 1`, `P_1 = B`, `P_{n+1} = B P_n + 2 n q P_{n-1}`, `B = 2cq - ix`.
    pub fn apply_g(&self) -> Result<Self, AlgebraError> {
        let q = self.q().get();
        let terms: Vec<_> =
            self.terms().iter().map(|t| (times_minus_i(t.exponent()), g_poly(t.poly(), t.exponent(), q))).collect();
        Self::from_terms(self.q(), terms)
    }

    /// `(LHS - RHS) f` for one of the four operator identities, pruned against
    /// the size of the pieces it was assembled from. Zero when the identity
    /// holds to rounding.
    pub fn commutator_residual(&self, which: Commutator) -> Result<Self, AlgebraError> {
        let q = self.q().get();
        let (a, b) = match which {
            Commutator::DX => {
                let a = self.apply_x().apply_d()?;
                let b = self.apply_d()?.apply_x().add(&self.scale(Complex64::new(q, 0.0))?)?;
                (a, b)
            }
            Commutator::DDstar => {
                let a = self.apply_d_star()?.apply_d()?;
                let b = self.apply_d()?.apply_d_star()?.add(&self.scale(Complex64::new(q, 0.0))?)?;
                (a, b)
            }
            Commutator::DG => (self.apply_g()?.apply_d()?, self.apply_d()?.apply_g()?.scale(-I)?),
            Commutator::DstarG => (self.apply_g()?.apply_d_star()?, self.apply_d_star()?.apply_g()?.scale(I)?),
        };
        let scale = a.max_coefficient().max(b.max_coefficient());
        let neg_b = b.terms().iter().map(|t| (t.exponent(), poly::scale(t.poly(), Complex64::new(-1.0, 0.0))));
        Self::canonicalize(self.q(), a.raw_terms().chain(neg_b), scale)
    }
}

fn d_poly(p: &[Complex64], c: Complex64, q: f64) -> Poly {
    poly::scale(&poly::add(&poly::derivative(p), &poly::scale(p, c)), Complex64::new(q, 0.0))
}

fn g_poly(p: &[Complex64], c: Complex64, q: f64) -> Poly {
    // P_n in double-double; its coefficients largely cancel near the mass of 𝓔_{-ic}
    let b0 = CDd::new(c) * CDd::real(2.0 * q);
    let mut out = vec![CDd::ZERO; p.len()];
    let mut prev: Vec<CDd> = Vec::new();
    let mut cur = vec![CDd::real(1.0)];
    for (n, coeff) in p.iter().enumerate() {
        if n > 0 {
            let w = CDd::real(2.0 * (n - 1) as f64 * q);
            let mut next = vec![CDd::ZERO; cur.len() + 1];
            for (k, v) in cur.iter().enumerate() {
                next[k] = next[k] + b0 * *v;
                next[k + 1] = next[k + 1] + times_minus_i_dd(*v);
            }
            for (k, v) in prev.iter().enumerate() {
                next[k] = next[k] + w * *v;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        let coeff = CDd::new(*coeff);
        for (k, v) in cur.iter().enumerate() {
            out[k] = out[k] + coeff * *v;
        }
    }
    poly::trim(out.into_iter().map(CDd::to_c64).collect())
}

fn times_minus_i_dd(z: CDd) -> CDd {
    CDd { re: z.im, im: -z.re }
}

/// The four operator identities checked on elements:
/// `[D, X] = q`, `[D, D*] = q`, `D𝒢 = -i𝒢D`, `D*𝒢 = i𝒢D*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Commutator {
    DX,
    DDstar,
    DG,
    DstarG,
}

impl Commutator {
    pub const ALL: [Commutator; 4] = [Commutator::DX, Commutator::DDstar, Commutator::DG, Commutator::DstarG];

    pub fn name(self) -> &'static str {
        match self {
            Commutator::DX => "DX",
            Commutator::DDstar => "DDstar",
            Commutator::DG => "DG",
            Commutator::DstarG => "DstarG",
        }
    }
}

impl fmt::Display for Commutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Commutator {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Commutator::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AlgebraError::Unsupported(format!("unknown commutator `{s}`")))
    }
}
