//! Truncated series representations of ζ(3) (and one of ζ(2)).
//!
//! Every method is a [`MethodDescriptor`]: a list of closed-form monomials in
//! π² and logarithms of exact arguments, plus a list of infinite series
//! components. Evaluating at outer order `N` keeps the first `N` terms of each
//! component.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hpreal::{working_precision, HPReal};
use crate::oracle::{check_prec, li_direct, zeta3_reference};
use crate::pbern::{combined_coeff, shared_table, sigma_coeff, zeta_even_coeff, PTable};
use crate::surd::{ratio, ExtSurd, SurdValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MethodId {
    #[serde(rename = "CLAUSEN_X6")]
    ClausenX6,
    #[serde(rename = "LOG2")]
    Log2,
    #[serde(rename = "ZETA2_LOG2")]
    Zeta2Log2,
    #[serde(rename = "POLY_LOG2")]
    PolyLog2,
    #[serde(rename = "TRI")]
    Tri,
    #[serde(rename = "SIX")]
    Six,
    #[serde(rename = "FINAL")]
    Final,
}

impl MethodId {
    pub const ALL: [MethodId; 7] = [
        MethodId::ClausenX6,
        MethodId::Log2,
        MethodId::Zeta2Log2,
        MethodId::PolyLog2,
        MethodId::Tri,
        MethodId::Six,
        MethodId::Final,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodId::ClausenX6 => "CLAUSEN_X6",
            MethodId::Log2 => "LOG2",
            MethodId::Zeta2Log2 => "ZETA2_LOG2",
            MethodId::PolyLog2 => "POLY_LOG2",
            MethodId::Tri => "TRI",
            MethodId::Six => "SIX",
            MethodId::Final => "FINAL",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Unknown { kind: "method", name: s.to_string() })
    }

    pub fn description(self) -> &'static str {
        match self {
            MethodId::ClausenX6 => "Clausen expansion at x = 1/6",
            MethodId::Log2 => "Li3(1/2) ladder, zeta(2n) series in ln2/(2 pi)",
            MethodId::Zeta2Log2 => "zeta(2) from Li2(1/2), zeta(2n) series in ln2/(2 pi)",
            MethodId::PolyLog2 => "Li3(1/2) ladder with P-polynomial coefficients in ln2/(2 sqrt6)",
            MethodId::Tri => "6 Li3(2/3) + 3 Li3(3/4) - Li3(8/9) identity, three P-polynomial series",
            MethodId::Six => "TRI with Li3(2/3) rewritten by the functional equation, six series",
            MethodId::Final => "SIX with Li3(3/4), Li3(sqrt(2/3)), Li3(sqrt(3/4)) rewritten, degree-4 expansion",
        }
    }

    pub fn source(self) -> &'static str {
        match self {
            MethodId::ClausenX6 => "ζ(3) = π²/8 − (π²/12)ln(π/3) + (π²/3) Σ ζ(2n)/(2n(2n+1)(2n+2)) (1/6)^(2n)",
            MethodId::Log2 => {
                "ζ(3) = (2π²/3)ln2 − 6ln²2 + (2/3)ln³2 + 4ln²2·ln(ln2) + 16ln²2 Σ (−1)^(n+1) ζ(2n)/(2n(2n+1)(2n+2)) (ln2/2π)^(2n)"
            }
            MethodId::Zeta2Log2 => {
                "ζ(2) = 2ln2(1 − ln(ln2)) − ln²2/2 − 4ln2 Σ (−1)^(n+1) ζ(2n)/(2n(2n+1)) (ln2/2π)^(2n)"
            }
            MethodId::PolyLog2 => "ζ(3) = (2π²/3)ln2 − 6ln²2 + (2/3)ln³2 + 4ln²2·ln(ln2) + 192 Σ c_i (ln2/(2√6))^(2i)",
            MethodId::Tri => "ζ(3) = (12/5)[R − 6L(2/3) − 3L(3/4) + L(8/9)], L(x) = Li₃(x) − ζ(3)",
            MethodId::Six => "TRI with L(2/3) = 8L(r) − 8L(2r/(1+r)) − 8L((1+r)/2) + 2L(4r/(1+r)²) + ladder logs, r = √(2/3)",
            MethodId::Final => "SIX with the ladder also applied at 3/4, √(2/3), √(3/4); remaining Li₃ by the degree-4 expansion",
        }
    }

    pub fn target(self) -> Target {
        match self {
            MethodId::Zeta2Log2 => Target::Zeta2,
            _ => Target::Zeta3,
        }
    }
}

impl std::fmt::Display for MethodId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Zeta3,
    Zeta2,
    /// `Li₃(x)` for the given argument.
    Li3(ExtSurd),
}

/// Quantity whose natural logarithm enters a formula.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum LogArg {
    Alg(ExtSurd),
    /// `π · r`.
    PiTimes(BigRational),
}

impl LogArg {
    pub fn rational(n: i64, d: i64) -> Self {
        LogArg::Alg(ExtSurd::base(SurdValue::frac(n, d)))
    }

    pub fn value(&self, prec: u32) -> HPReal {
        match self {
            LogArg::Alg(v) => v.eval(prec),
            LogArg::PiTimes(r) => HPReal::pi(prec).mul_ratio(r),
        }
    }

    pub fn label(&self) -> String {
        match self {
            LogArg::Alg(v) => v.to_string(),
            LogArg::PiTimes(r) => format!("pi*{}", crate::surd::format_rational(r)),
        }
    }
}

/// `coeff · π^(2·pi2) · Π ln(arg)^k · [ln ln(arg)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coeff: BigRational,
    pub pi2: u32,
    pub logs: Vec<(usize, u32)>,
    pub loglog: Option<usize>,
}

impl Monomial {
    pub fn new(coeff: BigRational, pi2: u32, logs: Vec<(usize, u32)>, loglog: Option<usize>) -> Self {
        let mut logs = logs;
        logs.sort();
        Monomial { coeff, pi2, logs, loglog }
    }

    fn same_shape(&self, o: &Monomial) -> bool {
        self.pi2 == o.pi2 && self.logs == o.logs && self.loglog == o.loglog
    }
}

/// Which P value the rearranged coefficients use at inner index `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PIndex {
    /// `P⁽ⁱ⁾(n+i-1)`
    Shifted,
    /// `P⁽ⁱ⁾(n)`
    Unshifted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `Σ s_n ζ(2n)/(2n(2n+1)[(2n+2)]) x^(2n)`, `s_n = (-1)^(n+1)` when alternating.
    ZetaEven { cubic: bool, alternating: bool },
    /// `Σ_i c_i(q) q^(2i)` with P-polynomial inner sums.
    PRearranged(PIndex),
    /// `Σ_n 2(-1)^(n+1) σₙ/((2n-1)2n(2n+1)(2n+2)) q^(2n+2)`.
    Deg2,
    /// `t² Σ_n combined(n) q^(2n+2)`, `t = 2√6 q`.
    Deg4,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Variable {
    Rational(BigRational),
    /// `ln(arg) / (k√6)`
    LogOverSqrt6 { arg: usize, k: u32 },
    /// `ln(arg) / (kπ)`
    LogOverPi { arg: usize, k: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesComponent {
    pub label: String,
    pub prefactor: BigRational,
    pub pi2: u32,
    pub logs: Vec<(usize, u32)>,
    pub variable: Variable,
    pub family: Family,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodDescriptor {
    pub name: String,
    pub target: Target,
    pub args: Vec<LogArg>,
    /// Coefficient of ζ(3) among the closed terms (nonzero only for Li₃ expansions).
    pub zeta3: BigRational,
    pub analytic: Vec<Monomial>,
    pub series: Vec<SeriesComponent>,
}

impl MethodDescriptor {
    fn new(name: &str, target: Target) -> Self {
        MethodDescriptor {
            name: name.to_string(),
            target,
            args: Vec::new(),
            zeta3: BigRational::zero(),
            analytic: Vec::new(),
            series: Vec::new(),
        }
    }

    pub fn arg(&mut self, a: LogArg) -> usize {
        if let Some(i) = self.args.iter().position(|x| *x == a) {
            return i;
        }
        self.args.push(a);
        self.args.len() - 1
    }

    pub fn push(&mut self, m: Monomial) {
        if let Some(e) = self.analytic.iter_mut().find(|e| e.same_shape(&m)) {
            e.coeff += m.coeff;
        } else {
            self.analytic.push(m);
        }
        self.analytic.retain(|m| !m.coeff.is_zero());
    }

    /// Same descriptor with every series component switched to `family`.
    /// The closed part is kept, so only swap between families that share it
    /// (the P-rearranged readings and DEG2); DEG4 carries an extra t⁴ term.
    pub fn with_family(&self, family: Family) -> Self {
        let mut d = self.clone();
        for c in &mut d.series {
            c.family = family;
        }
        d
    }
}

fn r(n: i64, d: i64) -> BigRational {
    ratio(n, d)
}

pub fn descriptor(id: MethodId) -> Result<MethodDescriptor> {
    Ok(match id {
        MethodId::ClausenX6 => {
            let mut d = MethodDescriptor::new(id.name(), Target::Zeta3);
            let a = d.arg(LogArg::PiTimes(r(1, 3)));
            d.push(Monomial::new(r(1, 8), 1, vec![], None));
            d.push(Monomial::new(r(-1, 12), 1, vec![(a, 1)], None));
            d.series.push(SeriesComponent {
                label: "x=1/6".into(),
                prefactor: r(1, 3),
                pi2: 1,
                logs: vec![],
                variable: Variable::Rational(r(1, 6)),
                family: Family::ZetaEven { cubic: true, alternating: false },
            });
            d
        }
        MethodId::Log2 | MethodId::PolyLog2 => {
            let mut d = MethodDescriptor::new(id.name(), Target::Zeta3);
            let a = d.arg(LogArg::rational(2, 1));
            d.push(Monomial::new(r(2, 3), 1, vec![(a, 1)], None));
            d.push(Monomial::new(r(-6, 1), 0, vec![(a, 2)], None));
            d.push(Monomial::new(r(2, 3), 0, vec![(a, 3)], None));
            d.push(Monomial::new(r(4, 1), 0, vec![(a, 2)], Some(a)));
            if id == MethodId::Log2 {
                d.series.push(SeriesComponent {
                    label: "ln2/(2pi)".into(),
                    prefactor: r(16, 1),
                    pi2: 0,
                    logs: vec![(a, 2)],
                    variable: Variable::LogOverPi { arg: a, k: 2 },
                    family: Family::ZetaEven { cubic: true, alternating: true },
                });
            } else {
                d.series.push(SeriesComponent {
                    label: "ln2/(2sqrt6)".into(),
                    prefactor: r(192, 1),
                    pi2: 0,
                    logs: vec![],
                    variable: Variable::LogOverSqrt6 { arg: a, k: 2 },
                    family: Family::PRearranged(PIndex::Shifted),
                });
            }
            d
        }
        MethodId::Zeta2Log2 => {
            let mut d = MethodDescriptor::new(id.name(), Target::Zeta2);
            let a = d.arg(LogArg::rational(2, 1));
            d.push(Monomial::new(r(2, 1), 0, vec![(a, 1)], None));
            d.push(Monomial::new(r(-2, 1), 0, vec![(a, 1)], Some(a)));
            d.push(Monomial::new(r(-1, 2), 0, vec![(a, 2)], None));
            d.series.push(SeriesComponent {
                label: "ln2/(2pi)".into(),
                prefactor: r(-4, 1),
                pi2: 0,
                logs: vec![(a, 1)],
                variable: Variable::LogOverPi { arg: a, k: 2 },
                family: Family::ZetaEven { cubic: false, alternating: true },
            });
            d
        }
        MethodId::Tri => ladder_method(id.name(), &[], Family::PRearranged(PIndex::Shifted))?,
        MethodId::Six => ladder_method(id.name(), &[q(2, 3)], Family::PRearranged(PIndex::Shifted))?,
        MethodId::Final => {
            let sqrt23 = ExtSurd::base(SurdValue::r6().scale(&r(1, 3)));
            let sqrt34 = ExtSurd::base(SurdValue::r3().scale(&r(1, 2)));
            ladder_method(id.name(), &[q(2, 3), q(3, 4), sqrt23, sqrt34], Family::Deg4)?
        }
    })
}

fn q(n: i64, d: i64) -> ExtSurd {
    ExtSurd::base(SurdValue::frac(n, d))
}

fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// `√x` as an element of the field when possible, otherwise as a quadratic
/// extension over it.
pub fn sqrt_ext(x: &ExtSurd) -> Result<ExtSurd> {
    if !x.y.is_zero() {
        return Err(Error::Domain(format!("square root of {x} leaves the supported extensions")));
    }
    if x.x.is_rational() && x.x.a.is_positive() {
        let (n, d) = (x.x.a.numer(), x.x.a.denom());
        let nd = n * d;
        for s in [1i64, 2, 3, 6] {
            let sb = BigInt::from(s);
            if (&nd % &sb).is_zero() {
                if let Some(root) = perfect_sqrt(&(&nd / &sb)) {
                    let unit = match s {
                        1 => SurdValue::one(),
                        2 => SurdValue::r2(),
                        3 => SurdValue::r3(),
                        _ => SurdValue::r6(),
                    };
                    return Ok(ExtSurd::base(unit.scale(&BigRational::new(root, d.clone()))));
                }
            }
        }
    }
    ExtSurd::sqrt_of(x.x.clone())
}

/// The four arguments and the log argument of one functional-equation step
/// at `r`: `[r, 2r/(1+r), (1+r)/2, 4r/(1+r)²]` and `2/(1+r)`.
pub fn ladder_children(rt: &ExtSurd) -> Result<([ExtSurd; 4], ExtSurd)> {
    let one = ExtSurd::int(1);
    let opr = one.add(rt)?;
    let inv = opr.inverse()?;
    let a = rt.mul(&ExtSurd::int(2))?.mul(&inv)?;
    let b = opr.mul(&ExtSurd::base(SurdValue::frac(1, 2)))?;
    let c = rt.mul(&ExtSurd::int(4))?.mul(&inv)?.mul(&inv)?;
    let g = ExtSurd::int(2).mul(&inv)?;
    Ok(([rt.clone(), a, b, c], g))
}

/// Weighted `L(x) = Li₃(x) − ζ(3)` terms and ladder log terms after
/// rewriting every argument listed in `rewrite`.
#[derive(Clone, Debug, Default)]
pub struct LadderPlan {
    pub li3: Vec<(BigRational, ExtSurd)>,
    pub logs: Vec<(BigRational, ExtSurd)>,
}

pub fn ladder_plan(rewrite: &[ExtSurd]) -> Result<LadderPlan> {
    fn expand(w: BigRational, x: ExtSurd, rewrite: &[ExtSurd], plan: &mut LadderPlan) -> Result<()> {
        if !rewrite.contains(&x) {
            if let Some(e) = plan.li3.iter_mut().find(|(_, y)| *y == x) {
                e.0 += w;
            } else {
                plan.li3.push((w, x));
            }
            return Ok(());
        }
        let rt = sqrt_ext(&x)?;
        let (kids, g) = ladder_children(&rt)?;
        for (k, c) in kids.into_iter().zip([8, -8, -8, 2]) {
            expand(&w * r(c, 1), k, rewrite, plan)?;
        }
        plan.logs.push((w, g));
        Ok(())
    }
    let mut plan = LadderPlan::default();
    for (w, x) in [(-6, q(2, 3)), (-3, q(3, 4)), (1, q(8, 9))] {
        expand(r(w, 1), x, rewrite, &mut plan)?;
    }
    Ok(plan)
}

/// Closed part of `L(x)` in terms of `t = ln(1/x)`:
/// `-(π²/6)t + t³/12 + (3/4)t² - (1/2)t² ln t`, and `-t⁴/288` for degree 4.
fn push_li3_closed(d: &mut MethodDescriptor, w: &BigRational, t: usize, deg4: bool) {
    d.push(Monomial::new(w * r(-1, 6), 1, vec![(t, 1)], None));
    d.push(Monomial::new(w * r(1, 12), 0, vec![(t, 3)], None));
    d.push(Monomial::new(w * r(3, 4), 0, vec![(t, 2)], None));
    d.push(Monomial::new(w * r(-1, 2), 0, vec![(t, 2)], Some(t)));
    if deg4 {
        d.push(Monomial::new(w * r(-1, 288), 0, vec![(t, 4)], None));
    }
}

/// Series prefactor multiplying the family sum for an `L(x)` of weight `w`.
fn li3_prefactor(w: &BigRational, family: Family) -> BigRational {
    match family {
        Family::Deg4 => w * r(24, 1),
        _ => w * r(-24, 1),
    }
}

/// The closed block of the 91/12 identity, `R` in `5/12 ζ(3) = R - 6L(2/3) - 3L(3/4) + L(8/9)`.
fn push_r_block(d: &mut MethodDescriptor, scale: &BigRational) {
    let l2 = d.arg(LogArg::rational(2, 1));
    let l3 = d.arg(LogArg::rational(3, 1));
    let l32 = d.arg(LogArg::rational(3, 2));
    let l43 = d.arg(LogArg::rational(4, 3));
    type Term = (BigRational, u32, Vec<(usize, u32)>);
    let terms: [Term; 7] = [
        (r(-1, 2), 1, vec![(l2, 1)]),
        (r(7, 3), 0, vec![(l2, 3)]),
        (r(-1, 3), 0, vec![(l3, 3)]),
        (r(-1, 3), 0, vec![(l32, 3)]),
        (r(-2, 1), 0, vec![(l43, 1), (l2, 2)]),
        (r(1, 1), 0, vec![(l3, 1), (l32, 2)]),
        (r(2, 3), 0, vec![(l43, 3)]),
    ];
    for (c, pi2, logs) in terms {
        d.push(Monomial::new(c * scale, pi2, logs, None));
    }
}

pub fn ladder_method(name: &str, rewrite: &[ExtSurd], family: Family) -> Result<MethodDescriptor> {
    let plan = ladder_plan(rewrite)?;
    let scale = r(12, 5);
    let mut d = MethodDescriptor::new(name, Target::Zeta3);
    push_r_block(&mut d, &scale);
    for (w, x) in &plan.li3 {
        let y = x.inverse()?;
        let t = d.arg(LogArg::Alg(y));
        let ws = w * &scale;
        push_li3_closed(&mut d, &ws, t, family == Family::Deg4);
        d.series.push(SeriesComponent {
            label: format!("Li3({x})"),
            prefactor: li3_prefactor(&ws, family),
            pi2: 0,
            logs: vec![],
            variable: Variable::LogOverSqrt6 { arg: t, k: 2 },
            family,
        });
    }
    for (w, g) in &plan.logs {
        let a = d.arg(LogArg::Alg(g.clone()));
        let ws = w * &scale;
        d.push(Monomial::new(&ws * r(-2, 3), 1, vec![(a, 1)], None));
        d.push(Monomial::new(&ws * r(4, 3), 0, vec![(a, 3)], None));
    }
    Ok(d)
}

/// Which expansion of `Li₃` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Li3Variant {
    #[serde(rename = "DEG2")]
    Deg2,
    #[serde(rename = "DEG4")]
    Deg4,
}

/// `Li₃(x) = ζ(3) + closed(t) + series`, `t = ln(1/x)`.
pub fn li3_descriptor(x: &ExtSurd, variant: Li3Variant) -> Result<MethodDescriptor> {
    let xv = x.eval(128);
    if !xv.is_positive() || xv >= HPReal::one(128) {
        return Err(Error::Domain(format!("Li3 expansion argument {x} outside (0, 1)")));
    }
    let family = match variant {
        Li3Variant::Deg2 => Family::Deg2,
        Li3Variant::Deg4 => Family::Deg4,
    };
    let mut d = MethodDescriptor::new(&format!("LI3_{variant:?}").to_uppercase(), Target::Li3(x.clone()));
    d.zeta3 = BigRational::one();
    let t = d.arg(LogArg::Alg(x.inverse()?));
    let one = BigRational::one();
    push_li3_closed(&mut d, &one, t, family == Family::Deg4);
    d.series.push(SeriesComponent {
        label: format!("Li3({x})"),
        prefactor: li3_prefactor(&one, family),
        pi2: 0,
        logs: vec![],
        variable: Variable::LogOverSqrt6 { arg: t, k: 2 },
        family,
    });
    Ok(d)
}

/// Inner sum cut-off: terms below `2^-(wp)/(100 N)` are dropped.
pub fn inner_cutoff_bits(wp: u32, order: usize) -> i64 {
    wp as i64 + (100.0 * order.max(1) as f64).log2().ceil() as i64
}

/// `c_i(q) = Σ_n (-1)^(n+1) n(n+1) P⁽ⁱ⁾(·) q^(2n) / ((2n+2i-3)(2n+2i-2)(2n+2i-1)(2n+2i))`,
/// summed until a term drops below `2^-cutoff_bits`. Returns the value and the
/// number of inner terms used.
pub fn p_coefficient(
    table: &PTable,
    i: usize,
    q: &HPReal,
    index: PIndex,
    cutoff_bits: i64,
) -> Result<(HPReal, usize)> {
    if i == 0 {
        return Err(Error::Domain("coefficient index starts at 1".into()));
    }
    let wp = q.prec();
    let q2 = q * q;
    let mut pw = HPReal::one(wp);
    let mut sum = HPReal::zero(wp);
    let mut n = 1usize;
    loop {
        pw = &pw * &q2;
        let p_at = match index {
            PIndex::Shifted => (n + i - 1) as i64,
            PIndex::Unshifted => n as i64,
        };
        let p = table.eval_poly(i, p_at)?;
        let m = 2 * (n + i) as i64;
        let den = (m - 3) * (m - 2) * (m - 1) * m;
        let c = p * r((n * (n + 1)) as i64, den);
        let mut t = pw.mul_ratio(&c);
        if n.is_multiple_of(2) {
            t = -t;
        }
        sum = sum + &t;
        if t.is_zero() || t.top() < -cutoff_bits {
            return Ok((sum, n));
        }
        n += 1;
        if n > 4 * wp as usize {
            return Err(Error::Precision(format!("inner sum for c_{i} did not converge")));
        }
    }
}

/// Evaluation state for one descriptor at one working precision.
pub struct Evaluator<'a> {
    desc: &'a MethodDescriptor,
    wp: u32,
    logs: Vec<HPReal>,
    pi2: HPReal,
    vars: Vec<HPReal>,
    prefs: Vec<HPReal>,
}

impl<'a> Evaluator<'a> {
    /// `max_order` sizes the shared P table up front so that later terms
    /// only read it.
    pub fn new(desc: &'a MethodDescriptor, wp: u32, max_order: usize) -> Result<Self> {
        let logs: Vec<HPReal> = desc
            .args
            .iter()
            .map(|a| {
                let v = a.value(wp);
                if !v.is_positive() {
                    return Err(Error::Domain(format!("log of non-positive {}", a.label())));
                }
                Ok(v.ln())
            })
            .collect::<Result<_>>()?;
        let pi = HPReal::pi(wp);
        let pi2 = &pi * &pi;
        shared_table(PTable::rows_for_column(max_order + 1) + 1);
        let sqrt6 = HPReal::from_i64(6, wp).sqrt();
        let mut vars = Vec::new();
        let mut prefs = Vec::new();
        for c in &desc.series {
            vars.push(match &c.variable {
                Variable::Rational(x) => HPReal::from_ratio(x, wp),
                Variable::LogOverSqrt6 { arg, k } => &logs[*arg] / sqrt6.mul_int(*k as i64),
                Variable::LogOverPi { arg, k } => &logs[*arg] / pi.mul_int(*k as i64),
            });
            let mut p = HPReal::from_ratio(&c.prefactor, wp);
            for _ in 0..c.pi2 {
                p = &p * &pi2;
            }
            for (a, k) in &c.logs {
                p = &p * &logs[*a].powi(*k);
            }
            prefs.push(p);
        }
        Ok(Evaluator { desc, wp, logs, pi2, vars, prefs })
    }

    pub fn series_arguments(&self) -> &[HPReal] {
        &self.vars
    }

    pub fn analytic(&self) -> Result<HPReal> {
        let mut acc = HPReal::zero(self.wp);
        if !self.desc.zeta3.is_zero() {
            acc = acc + zeta3_reference(self.wp)?.mul_ratio(&self.desc.zeta3);
        }
        for m in &self.desc.analytic {
            let mut v = HPReal::from_ratio(&m.coeff, self.wp);
            for _ in 0..m.pi2 {
                v = &v * &self.pi2;
            }
            for (a, k) in &m.logs {
                v = &v * &self.logs[*a].powi(*k);
            }
            if let Some(a) = m.loglog {
                let inner = &self.logs[a];
                if !inner.is_positive() {
                    return Err(Error::Domain(format!("ln ln of {}", self.desc.args[a].label())));
                }
                v = &v * &inner.ln();
            }
            acc = acc + v;
        }
        Ok(acc)
    }

    /// Outer term `j >= 1` of component `c`, with the inner cut-off used by
    /// rearranged families.
    pub fn term(&self, c: usize, j: usize, cutoff_bits: i64) -> Result<HPReal> {
        let comp = &self.desc.series[c];
        let x = &self.vars[c];
        let pref = &self.prefs[c];
        let x2 = x * x;
        let t = match comp.family {
            Family::ZetaEven { cubic, alternating } => {
                let n = j as i64;
                let mut den = 2 * n * (2 * n + 1);
                if cubic {
                    den *= 2 * n + 2;
                }
                let z = zeta_even_coeff(j)? / r(den, 1);
                let mut v = (&self.pi2 * &x2).powi(j as u32).mul_ratio(&z);
                if alternating && j.is_multiple_of(2) {
                    v = -v;
                }
                v
            }
            Family::PRearranged(index) => {
                let table = shared_table(PTable::rows_for_column(j));
                let (cv, _) = p_coefficient(&table, j, x, index, cutoff_bits)?;
                cv * x2.powi(j as u32)
            }
            Family::Deg2 => {
                let n = 2 * j as i64;
                let den = (n - 1) * n * (n + 1) * (n + 2);
                let mut v = x2.powi(j as u32 + 1).mul_ratio(&(sigma_coeff(j)? * r(2, den)));
                if j.is_multiple_of(2) {
                    v = -v;
                }
                v
            }
            Family::Deg4 => x2.powi(j as u32 + 2).mul_ratio(&(combined_coeff(j)? * r(24, 1))),
        };
        Ok(pref * &t)
    }
}

#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub component: usize,
    pub index: usize,
    pub value: HPReal,
}

#[derive(Clone, Debug)]
pub struct SeriesResult {
    pub method: String,
    pub order: usize,
    pub prec_bits: u32,
    pub value: HPReal,
    pub analytic: HPReal,
    pub error_estimate: HPReal,
    pub abs_error: HPReal,
    pub components: Vec<String>,
    pub terms: Vec<TraceEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermReport {
    pub component: String,
    pub index: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub method: String,
    pub order: usize,
    pub prec_bits: u32,
    pub value: String,
    pub error_estimate: String,
    pub abs_error: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermReport>>,
}

/// Decimal digits shown for a value computed at `prec` bits.
pub fn display_digits(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

impl SeriesResult {
    pub fn report(&self, trace: bool) -> SeriesReport {
        let digits = display_digits(self.prec_bits);
        SeriesReport {
            method: self.method.clone(),
            order: self.order,
            prec_bits: self.prec_bits,
            value: self.value.to_fixed(digits.saturating_sub(1), true),
            error_estimate: self.error_estimate.to_sci(3),
            abs_error: self.abs_error.to_sci(3),
            terms: trace.then(|| {
                self.terms
                    .iter()
                    .map(|t| TermReport {
                        component: self.components[t.component].clone(),
                        index: t.index,
                        value: t.value.to_sci(20),
                    })
                    .collect()
            }),
        }
    }
}

pub fn target_value(target: &Target, wp: u32) -> Result<HPReal> {
    Ok(match target {
        Target::Zeta3 => zeta3_reference(wp)?,
        Target::Zeta2 => {
            let pi = HPReal::pi(wp);
            (&pi * &pi).div_int(6)
        }
        Target::Li3(x) => li_direct(3, &x.eval(wp), wp)?,
    })
}

/// Closed terms plus the first `order` terms of every series component.
pub fn evaluate(desc: &MethodDescriptor, order: usize, prec: u32) -> Result<SeriesResult> {
    check_prec(prec)?;
    let wp = working_precision(prec);
    let ev = Evaluator::new(desc, wp, order + 1)?;
    let cutoff = inner_cutoff_bits(wp, order);
    let analytic = ev.analytic()?;
    let mut value = analytic.clone();
    let mut terms = Vec::new();
    let mut error_estimate = HPReal::zero(wp);
    for c in 0..desc.series.len() {
        for j in 1..=order {
            let t = ev.term(c, j, cutoff)?;
            value = value + &t;
            terms.push(TraceEntry { component: c, index: j, value: t.with_prec(prec) });
        }
        error_estimate = error_estimate + ev.term(c, order + 1, cutoff)?.abs();
    }
    let target = target_value(&desc.target, wp)?;
    let abs_error = (&value - &target).abs();
    Ok(SeriesResult {
        method: desc.name.clone(),
        order,
        prec_bits: prec,
        value: value.with_prec(prec),
        analytic: analytic.with_prec(prec),
        error_estimate: error_estimate.with_prec(prec),
        abs_error: abs_error.with_prec(prec),
        components: desc.series.iter().map(|c| c.label.clone()).collect(),
        terms,
    })
}

/// Closed terms plus every series summed until a term drops below
/// `2^-stop_bits`.
pub fn evaluate_converged(desc: &MethodDescriptor, wp: u32, stop_bits: u32, max_order: usize) -> Result<HPReal> {
    let ev = Evaluator::new(desc, wp, 1)?;
    let cutoff = inner_cutoff_bits(wp, max_order);
    let mut value = ev.analytic()?;
    for c in 0..desc.series.len() {
        let mut done = false;
        for j in 1..=max_order {
            let t = ev.term(c, j, cutoff)?;
            value = value + &t;
            if t.is_zero() || t.top() < -(stop_bits as i64) {
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::Precision(format!(
                "{} component {} not converged within {max_order} terms",
                desc.name, desc.series[c].label
            )));
        }
    }
    Ok(value)
}

pub fn eval_method(id: MethodId, order: usize, prec: u32) -> Result<SeriesResult> {
    evaluate(&descriptor(id)?, order, prec)
}

pub fn analytic_terms(id: MethodId, prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    let wp = working_precision(prec);
    let d = descriptor(id)?;
    Ok(Evaluator::new(&d, wp, 1)?.analytic()?.with_prec(prec))
}

pub fn li3_expansion(x: &ExtSurd, order: usize, prec: u32, variant: Li3Variant) -> Result<SeriesResult> {
    evaluate(&li3_descriptor(x, variant)?, order, prec)
}

/// Magnitudes of every series variable of a method.
pub fn series_arguments(id: MethodId, prec: u32) -> Result<Vec<HPReal>> {
    let d = descriptor(id)?;
    let ev = Evaluator::new(&d, working_precision(prec), 1)?;
    Ok(ev.series_arguments().iter().map(|v| v.abs().with_prec(prec)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub id: String,
    pub description: String,
    pub analytic_terms: usize,
    pub series_components: usize,
    pub source_quote: String,
}

pub fn registry() -> Result<Vec<RegistryEntry>> {
    MethodId::ALL
        .iter()
        .map(|&id| {
            let d = descriptor(id)?;
            Ok(RegistryEntry {
                id: id.name().into(),
                description: id.description().into(),
                analytic_terms: d.analytic.len(),
                series_components: d.series.len(),
                source_quote: id.source().into(),
            })
        })
        .collect()
}
