//! Finite extensions of `Q_2` presented as towers of unramified and
//! Eisenstein steps.
//!
//! Internally every tower is flattened to `W_f[Π]/(E(Π))` where `W_f` is the
//! unramified subring (`f ∈ {1, 2}`) and `E` is an Eisenstein polynomial of
//! degree `e` over `W_f` whose root `Π` is the uniformizer of the top step.
//! Stacking an Eisenstein step over an already ramified field recomputes the
//! minimal polynomial of the new uniformizer over `W_f` by linear algebra in
//! the basis `Π^i y^j`.

use std::sync::{Arc, OnceLock};

use num_rational::Ratio;

use super::element::PadicElement;
use super::ring::{solve_unimodular, Residue, W};
use super::squares::SquareClassData;
use crate::characters::{CharacterTable, HilbertPairing};
use crate::error::{Error, Result};

/// Working precision, in uniformizer-adic digits of the ambient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    /// Relative precision of freshly constructed elements.
    pub digits: u32,
    /// Extra digits required beyond any decision threshold.
    pub margin: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            digits: 32,
            margin: 8,
        }
    }
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Self {
        PrecisionContext {
            digits,
            ..Default::default()
        }
    }

    pub fn with_margin(digits: u32, margin: u32) -> Self {
        PrecisionContext { digits, margin }
    }
}

/// Coefficients live in 64-bit words, so absolute precision is capped well
/// below `64 e` to leave room for shifts during division.
const MAX_DIGITS_PER_E: u32 = 48;

/// Element of the field below a step, written `Σ (a_k + b_k ω) g^k` where
/// `g` is the generator of the previous Eisenstein step (absent: `g^0` only).
pub type LowerCoeff = Vec<W>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Adjoin a root of the fixed lift `x² + x + 1` (degree 2 only is supported).
    Unramified { degree: u32 },
    /// Adjoin a root of `x^s + c_{s-1} x^{s-1} + ... + c_0`; `coeffs = [c_0, ..., c_{s-1}]`.
    Eisenstein { coeffs: Vec<LowerCoeff> },
}

impl Step {
    pub fn unramified() -> Step {
        Step::Unramified { degree: 2 }
    }

    /// Eisenstein step with rational-integer coefficients `[c_0, .., c_{s-1}]`.
    pub fn eisenstein(coeffs: &[i64]) -> Step {
        Step::Eisenstein {
            coeffs: coeffs.iter().map(|&c| vec![W::from_int(c)]).collect(),
        }
    }

    /// Eisenstein step with coefficients in `W_f` (pairs `(a, b)` for `a + bω`).
    pub fn eisenstein_w(coeffs: &[(i64, i64)]) -> Step {
        Step::Eisenstein {
            coeffs: coeffs.iter().map(|&(a, b)| vec![W::new(a, b)]).collect(),
        }
    }

    /// Eisenstein step whose coefficients are elements of the current top field.
    pub fn eisenstein_over(coeffs: &[PadicElement]) -> Result<Step> {
        let coeffs = coeffs
            .iter()
            .map(|c| c.to_integral_coeffs())
            .collect::<Result<Vec<_>>>()?;
        Ok(Step::Eisenstein { coeffs })
    }

    pub fn degree(&self) -> u32 {
        match self {
            Step::Unramified { degree } => *degree,
            Step::Eisenstein { coeffs } => coeffs.len() as u32,
        }
    }
}

/// A finite extension of `Q_2` of degree at most 12 with residue field `F_2`
/// or `F_4`.
#[derive(Debug)]
pub struct LocalFieldTower {
    pub(crate) steps: Vec<Step>,
    pub(crate) e: u32,
    pub(crate) f: u32,
    /// `c_0 .. c_{e-1}` of the flattened Eisenstein polynomial over `W_f`;
    /// for `e = 1` this is `x - 2`.
    pub(crate) eis: Vec<W>,
    /// Image of each step generator in the flattened basis.
    pub(crate) gens: Vec<Vec<W>>,
    /// The integral element `2 / Π`.
    pub(crate) two_over_pi: Vec<W>,
    pub(crate) ctx: PrecisionContext,
    pub(crate) squares: OnceLock<SquareClassData>,
    pub(crate) pairing: OnceLock<Result<HilbertPairing>>,
    pub(crate) char_table: OnceLock<Result<CharacterTable>>,
    label: String,
}

/// Build a tower from its steps.
pub fn make_tower(steps: &[Step], ctx: PrecisionContext) -> Result<Arc<LocalFieldTower>> {
    LocalFieldTower::new(steps, ctx, None)
}

impl LocalFieldTower {
    pub fn new(steps: &[Step], ctx: PrecisionContext, label: Option<&str>) -> Result<Arc<Self>> {
        let total: u32 = steps.iter().map(Step::degree).product();
        if total > 12 {
            return Err(Error::UnsupportedTower(format!("total degree {total} exceeds 12")));
        }
        let mut f = 1u32;
        let mut e = 1u32;
        let mut eis = vec![W::from_int(-2)];
        let mut gens: Vec<Vec<W>> = Vec::new();
        for (idx, step) in steps.iter().enumerate() {
            match step {
                Step::Unramified { degree } => {
                    let nf = f * degree;
                    if *degree != 2 || nf > 2 {
                        return Err(Error::UnsupportedResidueField(nf));
                    }
                    f = nf;
                    let mut g = vec![W::ZERO; e as usize];
                    g[0] = W::OMEGA;
                    gens.push(g);
                }
                Step::Eisenstein { coeffs } => {
                    let s = coeffs.len() as u32;
                    if !(2..=3).contains(&s) {
                        return Err(Error::UnsupportedTower(format!(
                            "step {idx}: Eisenstein degree {s} not in 2..=3"
                        )));
                    }
                    let lower = Flat {
                        e,
                        eis: eis.clone(),
                    };
                    let coeffs: Vec<Vec<W>> = coeffs.iter().map(|c| lower.reduce_poly(c)).collect();
                    // Eisenstein criterion over the field below
                    if lower.val(&coeffs[0]) != Some(1) {
                        return Err(Error::NonEisenstein { step: idx });
                    }
                    if coeffs[1..].iter().any(|c| lower.val(c).is_some_and(|v| v < 1)) {
                        return Err(Error::NonEisenstein { step: idx });
                    }
                    let (new_eis, pi_image) = stack_eisenstein(&lower, &coeffs)
                        .ok_or_else(|| Error::UnsupportedTower(format!("step {idx}: basis change not unimodular")))?;
                    let upper = Flat {
                        e: e * s,
                        eis: new_eis.clone(),
                    };
                    // re-express earlier generators through the image of the old uniformizer
                    for g in gens.iter_mut() {
                        *g = upper.eval_poly(g, &pi_image);
                    }
                    let mut y = vec![W::ZERO; (e * s) as usize];
                    y[1] = W::ONE;
                    gens.push(y);
                    e *= s;
                    eis = new_eis;
                }
            }
        }
        let flat = Flat { e, eis: eis.clone() };
        if !flat.is_eisenstein() {
            return Err(Error::NonEisenstein { step: steps.len() });
        }
        if ctx.digits < 2 * e + 8 {
            return Err(Error::InvalidPrecision(format!(
                "digits {} below 2e + 8 = {}",
                ctx.digits,
                2 * e + 8
            )));
        }
        if ctx.digits + ctx.margin > MAX_DIGITS_PER_E * e {
            return Err(Error::InvalidPrecision(format!(
                "digits {} exceed the supported maximum {} for e = {e}",
                ctx.digits,
                (MAX_DIGITS_PER_E * e).saturating_sub(ctx.margin)
            )));
        }
        if ctx.digits < 2 * e + 1 + ctx.margin {
            return Err(Error::InvalidPrecision(format!(
                "digits {} below square-test threshold {} plus margin {}",
                ctx.digits,
                2 * e + 1,
                ctx.margin
            )));
        }
        let two_over_pi = flat.two_over_pi();
        let label = label.map(str::to_owned).unwrap_or_else(|| describe(steps));
        Ok(Arc::new(LocalFieldTower {
            steps: steps.to_vec(),
            e,
            f,
            eis,
            gens,
            two_over_pi,
            ctx,
            squares: OnceLock::new(),
            pairing: OnceLock::new(),
            char_table: OnceLock::new(),
            label,
        }))
    }

    /// `Q_2` itself.
    pub fn rationals(ctx: PrecisionContext) -> Arc<Self> {
        Self::new(&[], ctx, Some("Q2")).expect("Q2 is always constructible")
    }

    /// The same tower at a different working precision.
    pub fn with_precision(&self, ctx: PrecisionContext) -> Result<Arc<Self>> {
        Self::new(&self.steps, ctx, Some(&self.label))
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn degree(&self) -> u32 {
        self.e * self.f
    }

    pub fn ctx(&self) -> PrecisionContext {
        self.ctx
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Coefficients `c_0 .. c_{e-1}` of the monic Eisenstein polynomial of
    /// the uniformizer over the unramified subring.
    pub fn eisenstein_polynomial(&self) -> &[W] {
        &self.eis
    }

    pub fn uniformizer(self: &Arc<Self>) -> PadicElement {
        PadicElement::from_integral(self, self.pi_int(), self.ctx.digits + 1)
    }

    /// Image of the generator of step `k`.
    pub fn step_generator(self: &Arc<Self>, k: usize) -> PadicElement {
        PadicElement::from_integral(self, self.gens[k].clone(), self.ctx.digits)
    }

    /// The cube root of unity `ω` (only for `f = 2`).
    pub fn omega(self: &Arc<Self>) -> Option<PadicElement> {
        (self.f == 2).then(|| self.lift_residue(Residue::OMEGA))
    }

    pub fn one(self: &Arc<Self>) -> PadicElement {
        PadicElement::from_int(self, 1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> PadicElement {
        PadicElement::from_int(self, n)
    }

    /// `p / q` as an element; `q` must be nonzero.
    pub fn from_ratio(self: &Arc<Self>, r: Ratio<i64>) -> Result<PadicElement> {
        self.from_int(*r.numer()).div(&self.from_int(*r.denom()))
    }

    /// The Teichmüller lift of a residue, as a constant.
    pub fn lift_residue(self: &Arc<Self>, r: Residue) -> PadicElement {
        let mut v = vec![W::ZERO; self.e as usize];
        v[0] = r.lift();
        PadicElement::from_integral(self, v, self.ctx.digits)
    }

    /// Element `Σ (a_k + b_k ω) Π^k` from `W_f`-coordinates in the flattened basis.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[(i64, i64)]) -> PadicElement {
        let lower = self.flat();
        let v = lower.reduce_poly(&coeffs.iter().map(|&(a, b)| W::new(a, b)).collect::<Vec<_>>());
        let bonus = lower.val(&v).unwrap_or(0);
        PadicElement::from_integral(self, v, self.ctx.digits + bonus)
    }

    pub(crate) fn flat(&self) -> Flat {
        Flat {
            e: self.e,
            eis: self.eis.clone(),
        }
    }

    pub(crate) fn pi_int(&self) -> Vec<W> {
        let mut v = vec![W::ZERO; self.e as usize];
        if self.e == 1 {
            v[0] = W::from_int(2);
        } else {
            v[1] = W::ONE;
        }
        v
    }

    // integral arithmetic in the flattened basis

    pub(crate) fn mul_int(&self, x: &[W], y: &[W]) -> Vec<W> {
        mul_flat(self.e, &self.eis, x, y)
    }

    pub(crate) fn mul_pi(&self, x: &[W]) -> Vec<W> {
        let e = self.e as usize;
        if e == 1 {
            return vec![x[0].scale(2)];
        }
        let top = x[e - 1];
        let mut out = vec![W::ZERO; e];
        out[1..e].copy_from_slice(&x[..e - 1]);
        // Π^e = -Σ c_i Π^i
        for i in 0..e {
            out[i] = out[i].sub(top.mul(self.eis[i]));
        }
        out
    }

    /// Divide an element of `Π·O` by `Π`.
    pub(crate) fn div_pi(&self, x: &[W]) -> Vec<W> {
        let e = self.e as usize;
        let a0 = x[0];
        debug_assert!(a0.a & 1 == 0 && a0.b & 1 == 0, "div_pi of a non-multiple of the uniformizer");
        let half = a0.halve();
        let mut out: Vec<W> = self.two_over_pi.iter().map(|&c| c.mul(half)).collect();
        for i in 1..e {
            out[i - 1] = out[i - 1].add(x[i]);
        }
        out
    }

    /// Mask to `O / Π^n O`.
    pub(crate) fn trunc(&self, x: &mut [W], n: u32) {
        let e = self.e;
        for (i, c) in x.iter_mut().enumerate() {
            let i = i as u32;
            let bits = if n > i { (n - i).div_ceil(e) } else { 0 };
            *c = c.mask(bits);
        }
    }

    pub(crate) fn val_int(&self, x: &[W]) -> Option<u32> {
        self.flat().val(x)
    }

    /// Inverse of an integral unit modulo `Π^n`.
    pub(crate) fn inv_unit(&self, u: &[W], n: u32) -> Vec<W> {
        let e = self.e as usize;
        let mut x = vec![W::ZERO; e];
        x[0] = u[0].inverse().expect("unit has a unit constant coefficient");
        let mut two = vec![W::ZERO; e];
        two[0] = W::from_int(2);
        for _ in 0..12 {
            let ux = self.mul_int(u, &x);
            let corr: Vec<W> = two.iter().zip(&ux).map(|(a, b)| a.sub(*b)).collect();
            x = self.mul_int(&x, &corr);
            self.trunc(&mut x, n);
            let mut check = self.mul_int(u, &x);
            self.trunc(&mut check, n);
            check[0] = check[0].sub(W::ONE);
            let mut c = check;
            self.trunc(&mut c, n);
            if c.iter().all(|w| w.is_zero()) {
                break;
            }
        }
        x
    }
}

fn describe(steps: &[Step]) -> String {
    if steps.is_empty() {
        return "Q2".into();
    }
    let parts: Vec<String> = steps
        .iter()
        .map(|s| match s {
            Step::Unramified { degree } => format!("unr{degree}"),
            Step::Eisenstein { coeffs } => {
                let c: Vec<String> = coeffs.iter().map(|c| format!("{:?}", c)).collect();
                format!("eis[{}]", c.join(","))
            }
        })
        .collect();
    format!("Q2/{}", parts.join("/"))
}

/// `W_f[Π]/(E)` stripped of everything but the reduction data.
#[derive(Clone, Debug)]
pub(crate) struct Flat {
    pub e: u32,
    pub eis: Vec<W>,
}

fn mul_flat(e: u32, eis: &[W], x: &[W], y: &[W]) -> Vec<W> {
    let e = e as usize;
    if e == 1 {
        return vec![x[0].mul(y[0])];
    }
    let mut prod = vec![W::ZERO; 2 * e - 1];
    for (i, &a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = prod[i + j].add(a.mul(b));
        }
    }
    for k in (e..2 * e - 1).rev() {
        let t = prod[k];
        if t.is_zero() {
            continue;
        }
        prod[k] = W::ZERO;
        for i in 0..e {
            prod[k - e + i] = prod[k - e + i].sub(t.mul(eis[i]));
        }
    }
    prod.truncate(e);
    prod
}

impl Flat {
    pub fn mul(&self, x: &[W], y: &[W]) -> Vec<W> {
        mul_flat(self.e, &self.eis, x, y)
    }

    /// Reduce a polynomial in `Π` of any length to the basis `1..Π^{e-1}`.
    pub fn reduce_poly(&self, p: &[W]) -> Vec<W> {
        let e = self.e as usize;
        let mut out = vec![W::ZERO; e];
        let mut pow = vec![W::ZERO; e];
        pow[0] = W::ONE;
        let pi = if e == 1 {
            vec![W::from_int(2)]
        } else {
            let mut v = vec![W::ZERO; e];
            v[1] = W::ONE;
            v
        };
        for (k, &c) in p.iter().enumerate() {
            if k > 0 {
                pow = self.mul(&pow, &pi);
            }
            if !c.is_zero() {
                for i in 0..e {
                    out[i] = out[i].add(c.mul(pow[i]));
                }
            }
        }
        out
    }

    /// Evaluate `Σ p_k X^k` (coefficients in `W`) at an element `x` of this field.
    pub fn eval_poly(&self, p: &[W], x: &[W]) -> Vec<W> {
        let e = self.e as usize;
        let mut acc = vec![W::ZERO; e];
        for &c in p.iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = acc[0].add(c);
        }
        acc
    }

    pub fn val(&self, x: &[W]) -> Option<u32> {
        x.iter()
            .enumerate()
            .filter_map(|(i, c)| c.v2().map(|v| v * self.e + i as u32))
            .min()
    }

    fn is_eisenstein(&self) -> bool {
        self.eis[0].v2() == Some(1) && self.eis[1..].iter().all(|c| c.v2().is_none_or(|v| v >= 1))
    }

    fn two_over_pi(&self) -> Vec<W> {
        let e = self.e as usize;
        // 2 w0 = c_0 and 2/Π = -(Π^{e-1} + c_{e-1} Π^{e-2} + ... + c_1) / w0
        let w0 = self.eis[0].halve();
        let inv = w0.inverse().expect("Eisenstein constant term is twice a unit");
        let mut v = vec![W::ZERO; e];
        for i in 0..e {
            let c = if i + 1 == e { W::ONE } else { self.eis[i + 1] };
            v[i] = c.mul(inv).neg();
        }
        v
    }
}

/// Adjoin a root `y` of `y^s + Σ g_k y^k` (coefficients in the flattened field
/// `lower`) and return the minimal polynomial of `y` over `W_f` together with
/// the image of the old uniformizer as a polynomial in `y`.
fn stack_eisenstein(lower: &Flat, g: &[Vec<W>]) -> Option<(Vec<W>, Vec<W>)> {
    let e = lower.e as usize;
    let s = g.len();
    let n = e * s;
    let idx = |i: usize, j: usize| j * e + i; // basis Π^i y^j
    // multiplication by y on a coordinate vector
    let mul_y = |v: &[W]| -> Vec<W> {
        let mut out = vec![W::ZERO; n];
        for j in 0..s {
            let block: Vec<W> = (0..e).map(|i| v[idx(i, j)]).collect();
            if block.iter().all(|c| c.is_zero()) {
                continue;
            }
            if j + 1 < s {
                for i in 0..e {
                    out[idx(i, j + 1)] = out[idx(i, j + 1)].add(block[i]);
                }
            } else {
                // block · y^s = -Σ_k block·g_k y^k
                for (k, gk) in g.iter().enumerate() {
                    let prod = lower.mul(&block, gk);
                    for i in 0..e {
                        out[idx(i, k)] = out[idx(i, k)].sub(prod[i]);
                    }
                }
            }
        }
        out
    };
    let mut powers = Vec::with_capacity(n + 1);
    let mut cur = vec![W::ZERO; n];
    cur[idx(0, 0)] = W::ONE;
    for _ in 0..=n {
        let next = mul_y(&cur);
        powers.push(cur);
        cur = next;
    }
    // matrix with columns y^0..y^{n-1}
    let m: Vec<Vec<W>> = (0..n).map(|r| (0..n).map(|c| powers[c][r]).collect()).collect();
    let neg_top: Vec<W> = powers[n].iter().map(|w| w.neg()).collect();
    let mut old_pi = vec![W::ZERO; n];
    if e == 1 {
        old_pi[idx(0, 0)] = W::from_int(2);
    } else {
        old_pi[idx(1, 0)] = W::ONE;
    }
    let sol = solve_unimodular(&m, &[neg_top, old_pi])?;
    // Σ c_k y^k = -y^n
    Some((sol[0].clone(), sol[1].clone()))
}
