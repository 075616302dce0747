//! The star product on `n` copies of the canonical phase plane.
//!
//! On one point the Weyl algebra `⟨x, y⟩/(yx − xy − ħ)` in normal order
//! gives
//!
//! ```text
//! (x^c y^d) ⋆ (x^f y^g) = Σ_k C(d, k)·(f)_k·x^{c+f−k} y^{d+g−k} ħ^k
//! ```
//!
//! and distinct points commute, so the product of two point-variable
//! monomials is the product over points of the single-point rule. The
//! coefficients are packaged as a [`BilinearFamily`] so that the quantum
//! product of multi-symmetric functions can be evaluated for any family.
//!
//! Phase variables: abstract `x = y₁`, `y = y₂`; on point `i`,
//! `x_i = x_{i1}` and `y_i = x_{i2}`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::margins;
use crate::multisym::{ESum, ESymbol, MultiIndex, PolyTuple};
use crate::polyalg::{HbarSeries, Monomial, Polynomial, VarId};
use crate::Rational;

/// Abstract phase-plane coordinate `x`.
pub const X: VarId = VarId::Abstract(1);
/// Abstract phase-plane coordinate `y`.
pub const Y: VarId = VarId::Abstract(2);

/// `x_i` as a point variable.
pub fn xi(i: u32) -> VarId {
    VarId::point(i, 1)
}

/// `y_i` as a point variable.
pub fn yi(i: u32) -> VarId {
    VarId::point(i, 2)
}

/// Sign convention for the Poisson bracket: `{x_i, y_i} = σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_rational(self) -> Rational {
        Rational::from_integer(BigInt::from(self.value()))
    }
}

/// `n` points in the plane with a bracket sign convention.
///
/// With the normal-ordered family shipped here, `f⋆g − g⋆f` has first-order
/// term `{f, g}` for [`Sign::Minus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseContext {
    pub n: u32,
    pub sign: Sign,
}

impl PhaseContext {
    pub fn new(n: u32, sign: Sign) -> Self {
        PhaseContext { n, sign }
    }

    /// The convention under which the commutator's ħ-coefficient equals the
    /// bracket for the Weyl family.
    pub fn commutator_convention(n: u32) -> Self {
        PhaseContext { n, sign: Sign::Minus }
    }
}

/// One term of the single-point Weyl product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylTerm {
    pub coeff: BigInt,
    pub x_exp: u32,
    pub y_exp: u32,
}

/// The ħ^k term of `(x^c y^d) ⋆ (x^f y^g)`: `C(d, k)·(f)_k·x^{c+f−k} y^{d+g−k}`.
/// `None` when `k > min(d, f)`, where the coefficient vanishes.
pub fn weyl_bk(c: u32, d: u32, f: u32, g: u32, k: u32) -> Option<WeylTerm> {
    if k > d.min(f) {
        return None;
    }
    Some(WeylTerm { coeff: binomial(d, k) * falling(f, k), x_exp: c + f - k, y_exp: d + g - k })
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn falling(f: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(f - i))
}

/// An indexed family `k ↦ B_k` of bilinear operators on single-point
/// polynomials in the abstract phase coordinates, the ħ^k coefficients of a
/// star product. `B₀` must be the commutative product and `B_k(f, 1)`,
/// `B_k(1, g)` must vanish for `k >= 1`.
pub trait BilinearFamily: Sync {
    fn apply(&self, k: u32, f: &Polynomial, g: &Polynomial) -> Polynomial;

    /// A bound beyond which `B_k(f, g)` vanishes.
    fn max_order(&self, f: &Polynomial, g: &Polynomial) -> u32;
}

/// The normal-ordered Weyl family.
#[derive(Debug, Clone, Copy, Default)]
pub struct WeylFamily;

impl BilinearFamily for WeylFamily {
    fn apply(&self, k: u32, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut terms = Vec::new();
        for (mf, cf) in f.terms() {
            for (mg, cg) in g.terms() {
                let t = weyl_bk(mf.exponent(X), mf.exponent(Y), mg.exponent(X), mg.exponent(Y), k);
                if let Some(t) = t {
                    let m = Monomial::from_pairs([(X, t.x_exp), (Y, t.y_exp)]);
                    terms.push((m, cf * cg * Rational::from_integer(t.coeff)));
                }
            }
        }
        Polynomial::from_terms(terms)
    }

    fn max_order(&self, f: &Polynomial, g: &Polynomial) -> u32 {
        f.terms()
            .iter()
            .flat_map(|(mf, _)| g.terms().iter().map(move |(mg, _)| mf.exponent(Y).min(mg.exponent(X))))
            .max()
            .unwrap_or(0)
    }
}

fn check_phase_point(p: &Polynomial) -> Result<()> {
    for v in p.variables() {
        match v {
            VarId::Abstract(_) => return Err(Error::AbstractVariable(v.to_string())),
            VarId::Point { point, coord } if coord > 2 => {
                return Err(Error::VariableOutOfRange { var: v.to_string(), n: point, d: 2 })
            }
            _ => {}
        }
    }
    Ok(())
}

fn check_phase_abstract(p: &Polynomial) -> Result<()> {
    for v in p.variables() {
        match v {
            VarId::Point { .. } => return Err(Error::PointVariable(v.to_string())),
            VarId::Abstract(j) if j > 2 => return Err(Error::VariableOutOfRange { var: v.to_string(), n: 0, d: 2 }),
            _ => {}
        }
    }
    Ok(())
}

/// Star product of two point-variable monomials.
fn star_monomials<B: BilinearFamily + ?Sized>(
    family: &B,
    f: &Monomial,
    g: &Monomial,
    order: Option<u32>,
) -> HbarSeries {
    let mut points = f.points();
    points.extend(g.points());
    points.sort_unstable();
    points.dedup();
    let mut acc = HbarSeries::one(order);
    for i in points {
        let fi = Polynomial::monomial(f.point_factor(i));
        let gi = Polynomial::monomial(g.point_factor(i));
        let top = family.max_order(&fi, &gi);
        let top = order.map_or(top, |o| top.min(o.saturating_sub(1)));
        let mut local = HbarSeries::zero(order);
        for k in 0..=top {
            local.add_at(k, &family.apply(k, &fi, &gi).substitute_point_unchecked(i));
        }
        acc = acc.mul(&local);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Star product of two point polynomials for an arbitrary family.
pub fn star_poly_with<B: BilinearFamily + ?Sized>(
    family: &B,
    f: &Polynomial,
    g: &Polynomial,
    order: Option<u32>,
) -> Result<HbarSeries> {
    check_phase_point(f)?;
    check_phase_point(g)?;
    let mut out = HbarSeries::zero(order);
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            let c = cf * cg;
            for (k, p) in star_monomials(family, mf, mg, order).coeffs() {
                out.add_at(k, &p.scale(&c));
            }
        }
    }
    Ok(out)
}

/// Star product of two ħ-series for an arbitrary family.
pub fn star_with<B: BilinearFamily + ?Sized>(
    family: &B,
    f: &HbarSeries,
    g: &HbarSeries,
    order: Option<u32>,
) -> Result<HbarSeries> {
    for (_, p) in f.coeffs().chain(g.coeffs()) {
        check_phase_point(p)?;
    }
    Ok(f.cauchy_series(g, order, |a, b, o| star_poly_with(family, a, b, o).expect("phase variables checked above")))
}

/// Weyl star product of two ħ-series, truncated at `order`.
pub fn star(f: &HbarSeries, g: &HbarSeries, order: Option<u32>) -> Result<HbarSeries> {
    star_with(&WeylFamily, f, g, order)
}

/// Weyl star product of two polynomials.
pub fn star_poly(f: &Polynomial, g: &Polynomial, order: Option<u32>) -> Result<HbarSeries> {
    star_poly_with(&WeylFamily, f, g, order)
}

/// `F⋆G − G⋆F`.
pub fn commutator(f: &HbarSeries, g: &HbarSeries, _ctx: &PhaseContext, order: Option<u32>) -> Result<HbarSeries> {
    Ok(star(f, g, order)?.sub(&star(g, f, order)?))
}

/// `σ·Σ_i (∂f/∂x_i ∂g/∂y_i − ∂f/∂y_i ∂g/∂x_i)`.
pub fn poisson_bracket(f: &Polynomial, g: &Polynomial, ctx: &PhaseContext) -> Polynomial {
    let mut points: Vec<u32> = f.variables().into_iter().chain(g.variables()).filter_map(|v| v.point_index()).collect();
    points.sort_unstable();
    points.dedup();
    let mut out = Polynomial::zero();
    for i in points {
        let term = f.partial_derivative(xi(i)).mul(&g.partial_derivative(yi(i)));
        let back = f.partial_derivative(yi(i)).mul(&g.partial_derivative(xi(i)));
        out = out.add(&term.sub(&back));
    }
    out.scale(&ctx.sign.as_rational())
}

/// Largest `k` with a possibly nonzero `B_k(p_l, q_r)`.
pub fn slice_bound<B: BilinearFamily + ?Sized>(family: &B, p: &PolyTuple, q: &PolyTuple) -> u32 {
    p.iter().flat_map(|pl| q.iter().map(move |qr| family.max_order(pl, qr))).max().unwrap_or(0)
}

/// The argument list `B(p, q) = (p₁…p_a, q₁…q_b, B_0(p₁,q₁)…B_K(p₁,q₁), …)`
/// with `(l, r)` blocks in row-major order and `k = 0..=k_max` inside each.
pub fn bilinear_arguments<B: BilinearFamily + ?Sized>(
    family: &B,
    p: &PolyTuple,
    q: &PolyTuple,
    k_max: u32,
) -> Vec<Polynomial> {
    let mut args: Vec<Polynomial> = p.iter().chain(q.iter()).cloned().collect();
    for pl in p.iter() {
        for qr in q.iter() {
            args.extend((0..=k_max).map(|k| family.apply(k, pl, qr)));
        }
    }
    args
}

/// The index of `e_γ(B(p, q))` matching [`bilinear_arguments`].
pub fn cubical_index(g: &margins::CubicalMatrix) -> MultiIndex {
    let (a, b, k_max) = (g.a(), g.b(), g.k_max());
    let mut idx: Vec<u32> = (1..=a).map(|l| g.get(l, 0, 0)).collect();
    idx.extend((1..=b).map(|r| g.get(0, r, 0)));
    for l in 1..=a {
        for r in 1..=b {
            idx.extend((0..=k_max).map(|k| g.get(l, r, k)));
        }
    }
    MultiIndex::new(idx)
}

/// `e_α(p) ⋆ e_β(q) = Σ_m Σ_{γ ∈ Q(α,β,n,m)} e_γ(B(p, q)) ħ^m` for an
/// arbitrary family. Symbols with a vanishing argument are omitted.
pub fn quantum_product_with<B: BilinearFamily + ?Sized>(
    family: &B,
    p: &PolyTuple,
    alpha: &MultiIndex,
    q: &PolyTuple,
    beta: &MultiIndex,
    ctx: &PhaseContext,
    order: Option<u32>,
) -> Result<ESum> {
    if p.len() != alpha.len() {
        return Err(Error::ArityMismatch { index: alpha.len(), args: p.len() });
    }
    if q.len() != beta.len() {
        return Err(Error::ArityMismatch { index: beta.len(), args: q.len() });
    }
    alpha.check_weight(ctx.n)?;
    beta.check_weight(ctx.n)?;
    for e in p.iter().chain(q.iter()) {
        check_phase_abstract(e)?;
    }
    let k_max = slice_bound(family, p, q);
    let args = bilinear_arguments(family, p, q, k_max);
    let mut top = ctx.n * k_max;
    if let Some(o) = order {
        if o == 0 {
            return Ok(ESum::new());
        }
        top = top.min(o - 1);
    }
    let mut out = ESum::new();
    for m in 0..=top {
        for g in margins::enumerate_q(alpha, beta, ctx.n, m, k_max) {
            let sym = ESymbol::new(cubical_index(&g), args.clone(), Rational::one(), m)?;
            if !sym.vanishes() {
                out.push(sym);
            }
        }
    }
    Ok(out)
}

/// The Weyl quantum product of two Vaccarino functions.
pub fn quantum_product(
    p: &PolyTuple,
    alpha: &MultiIndex,
    q: &PolyTuple,
    beta: &MultiIndex,
    ctx: &PhaseContext,
    order: Option<u32>,
) -> Result<ESum> {
    quantum_product_with(&WeylFamily, p, alpha, q, beta, ctx, order)
}

/// `2·Σ_{γ ∈ Q(α,β,n,1)} e_γ(B(p, q))`, as a plain (ħ-free) sum.
pub fn bracket_esum(
    p: &PolyTuple,
    alpha: &MultiIndex,
    q: &PolyTuple,
    beta: &MultiIndex,
    ctx: &PhaseContext,
) -> Result<ESum> {
    let full = quantum_product(p, alpha, q, beta, ctx, Some(2))?;
    let two = Rational::from_integer(BigInt::from(2));
    Ok(full.at_hbar(1).map(|s| s.clone().with_coeff(s.coeff() * &two, 0)).collect::<Vec<_>>().into())
}

/// Truncation order that keeps every term of `e_α(p) ⋆ e_β(q)`.
pub fn full_order(p: &PolyTuple, q: &PolyTuple, n: u32) -> u32 {
    n * slice_bound(&WeylFamily, p, q) + 1
}
