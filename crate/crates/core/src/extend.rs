//! Extension of a thickening action from a seed interval `[0, α]` (or
//! `[−α, α]`) to all parameters.
//!
//! A query `a ≥ 0` is written `a = nλ + r` with `λ = α/2`, `0 ≤ r < λ`,
//! and `K_a` is realized as `K_λ^n ∘ K_r`: `r` is applied first. Negative
//! parameters use the mirrored decomposition of `|a|` with `K_{−λ}` and
//! `K_{−r}`. Restriction maps between extended actions are assembled one
//! kernel factor at a time from the seed restrictions.

use std::fmt;

use crate::barcode::{iso_equal, GradedBarcode};
use crate::error::{Error, Result};
use crate::hom::{self, Morphism};
use crate::scalar::Scalar;
use crate::thicken;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    NonNegative,
    TwoSided,
}

/// Action of a seed family on objects and morphisms. `apply` and
/// `restrict` need only be defined for parameters in the seed interval.
pub trait ThickeningAction {
    type Object: Clone + PartialEq + fmt::Debug;
    type Morphism: Clone + PartialEq + fmt::Debug;

    fn apply(&self, a: &Scalar, x: &Self::Object) -> Result<Self::Object>;
    /// The seed restriction `K_b x → K_a x` for `a ≤ b`.
    fn restrict(&self, a: &Scalar, b: &Scalar, x: &Self::Object) -> Result<Self::Morphism>;
    fn apply_morphism(&self, a: &Scalar, m: &Self::Morphism) -> Result<Self::Morphism>;
    /// Diagrammatic composite: `m1`, then `m2`.
    fn compose(&self, m1: &Self::Morphism, m2: &Self::Morphism) -> Result<Self::Morphism>;
    fn identity(&self, x: &Self::Object) -> Self::Morphism;
    fn source(&self, m: &Self::Morphism) -> Self::Object;
    fn target(&self, m: &Self::Morphism) -> Self::Object;
    fn objects_equal(&self, x: &Self::Object, y: &Self::Object) -> bool {
        x == y
    }
}

#[derive(Clone, Debug)]
pub struct SeedFamily<A> {
    pub alpha: Scalar,
    pub mode: Mode,
    pub action: A,
}

/// `|a| = nλ + r` with `0 ≤ r < λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionPlan {
    pub lambda: Scalar,
    pub n: u64,
    pub r: Scalar,
    pub negative: bool,
}

impl ExtensionPlan {
    pub fn new(lambda: &Scalar, a: &Scalar) -> Self {
        let size = a.abs();
        let n = (&size / lambda).floor();
        let r = &size - &(lambda * &Scalar::from_bigint(n.clone()));
        ExtensionPlan {
            lambda: lambda.clone(),
            n: u64::try_from(n).expect("parameter within range"),
            r,
            negative: a.is_negative(),
        }
    }

    /// Kernel factors, innermost first: `[r, λ, …, λ]` with signs.
    pub fn factors(&self) -> Vec<Scalar> {
        let sign = |s: &Scalar| if self.negative { -s } else { s.clone() };
        let mut out = vec![sign(&self.r)];
        out.extend((0..self.n).map(|_| sign(&self.lambda)));
        out
    }
}

/// Choice of the step `λ` relative to `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaPolicy {
    Half,
    Third,
}

impl LambdaPolicy {
    pub fn lambda(self, alpha: &Scalar) -> Scalar {
        match self {
            LambdaPolicy::Half => alpha / &Scalar::int(2),
            LambdaPolicy::Third => alpha / &Scalar::int(3),
        }
    }
}

fn violation(law: &str, detail: impl fmt::Display) -> Error {
    Error::SeedViolation(format!("{law}: {detail}"))
}

impl<A: ThickeningAction> SeedFamily<A> {
    pub fn new(alpha: Scalar, mode: Mode, action: A) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidArgument(format!("seed length must be positive, got {alpha}")));
        }
        Ok(SeedFamily {
            alpha,
            mode,
            action,
        })
    }

    pub fn lambda(&self) -> Scalar {
        LambdaPolicy::Half.lambda(&self.alpha)
    }

    pub fn plan(&self, a: &Scalar) -> ExtensionPlan {
        ExtensionPlan::new(&self.lambda(), a)
    }

    fn check_sign(&self, a: &Scalar) -> Result<()> {
        if a.is_negative() && self.mode == Mode::NonNegative {
            return Err(Error::InvalidArgument(format!(
                "negative parameter {a} for a non-negative seed"
            )));
        }
        Ok(())
    }

    fn seed_apply(&self, a: &Scalar, x: &A::Object) -> Result<A::Object> {
        if a.abs() > self.alpha {
            return Err(Error::InvalidArgument(format!(
                "seed parameter {a} outside [−{0}, {0}]",
                self.alpha
            )));
        }
        self.action.apply(a, x)
    }

    fn apply_factors(&self, factors: &[Scalar], x: &A::Object) -> Result<A::Object> {
        factors
            .iter()
            .try_fold(x.clone(), |y, s| self.seed_apply(s, &y))
    }

    pub fn extend_apply_with(
        &self,
        policy: LambdaPolicy,
        a: &Scalar,
        x: &A::Object,
    ) -> Result<A::Object> {
        self.check_sign(a)?;
        let unit = self.seed_apply(&Scalar::zero(), x)?;
        if !self.action.objects_equal(&unit, x) {
            return Err(violation("unit law K_0 x = x", format!("{x:?} ↦ {unit:?}")));
        }
        let plan = ExtensionPlan::new(&policy.lambda(&self.alpha), a);
        self.apply_factors(&plan.factors(), x)
    }

    pub fn extend_apply(&self, a: &Scalar, x: &A::Object) -> Result<A::Object> {
        self.extend_apply_with(LambdaPolicy::Half, a, x)
    }

    /// The extended action on a morphism, factor by factor.
    pub fn extend_apply_morphism(&self, a: &Scalar, m: &A::Morphism) -> Result<A::Morphism> {
        self.check_sign(a)?;
        self.plan(a)
            .factors()
            .iter()
            .try_fold(m.clone(), |acc, s| self.action.apply_morphism(s, &acc))
    }

    /// Replace the kernel factors `src` (innermost first) by `tgt` one at a
    /// time, each through a seed restriction wrapped by the outer factors.
    fn stagewise(&self, src: &[Scalar], tgt: &[Scalar], x: &A::Object) -> Result<A::Morphism> {
        debug_assert_eq!(src.len(), tgt.len());
        let start = self.apply_factors(src, x)?;
        let mut total = self.action.identity(&start);
        let mut inner = x.clone();
        for k in 0..src.len() {
            let mut stage = self.action.restrict(&tgt[k], &src[k], &inner)?;
            for s in &src[k + 1..] {
                stage = self.action.apply_morphism(s, &stage)?;
            }
            let here = self.action.target(&total);
            let from = self.action.source(&stage);
            if !self.action.objects_equal(&here, &from) {
                return Err(violation(
                    "composition witness K_a K_b = K_{a+b}",
                    format!("stage {k} starts at {from:?}, expected {here:?}"),
                ));
            }
            total = self.action.compose(&total, &stage)?;
            inner = self.seed_apply(&tgt[k], &inner)?;
        }
        Ok(total)
    }

    /// `ρ_{a,b}: K_b x → K_a x` on the extended action.
    pub fn extend_restrict(&self, a: &Scalar, b: &Scalar, x: &A::Object) -> Result<A::Morphism> {
        if a > b {
            return Err(Error::BadRestriction {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        self.check_sign(a)?;
        let zero = Scalar::zero();
        if a.is_negative() && !b.is_negative() && !b.is_zero() {
            let first = self.extend_restrict(&zero, b, x)?;
            let second = self.extend_restrict(a, &zero, x)?;
            return self.action.compose(&first, &second);
        }
        let (pa, pb) = (self.plan(a), self.plan(b));
        let (src, tgt) = if a.is_negative() || b.is_negative() {
            // |a| ≥ |b|: the source has fewer factors; pad it with K_0.
            let fa = pa.factors();
            let fb = pb.factors();
            if pa.n == pb.n {
                (fb, fa)
            } else {
                let pad = (pa.n - pb.n) as usize;
                let mut src = vec![Scalar::zero(); pad];
                src.extend(fb);
                (src, fa)
            }
        } else {
            let fb = pb.factors();
            if pa.n == pb.n {
                (fb, pa.factors())
            } else {
                // [r_b, λ^n] → [0, 0^{n−m−1}, r_a, λ^m].
                let gap = (pb.n - pa.n) as usize;
                let mut tgt = vec![Scalar::zero(); gap];
                tgt.push(pa.r.clone());
                tgt.extend((0..pa.n).map(|_| self.lambda()));
                (fb, tgt)
            }
        };
        let m = self.stagewise(&src, &tgt, x)?;
        let want = self.extend_apply(a, x)?;
        let got = self.action.target(&m);
        if !self.action.objects_equal(&got, &want) {
            return Err(violation(
                "restriction target",
                format!("{got:?} differs from K_{a} x = {want:?}"),
            ));
        }
        Ok(m)
    }

    pub fn lambda_independence(&self, a: &Scalar, x: &A::Object) -> Result<bool> {
        let half = self.extend_apply_with(LambdaPolicy::Half, a, x)?;
        let third = self.extend_apply_with(LambdaPolicy::Third, a, x)?;
        Ok(self.action.objects_equal(&half, &third))
    }

    /// Check the naturality squares (i), associativity (ii) and unit
    /// triangles (iii) on every combination of samples and objects.
    pub fn coherence_check(&self, samples: &[Scalar], objects: &[A::Object]) -> CoherenceReport {
        let mut report = CoherenceReport::default();
        let zero = Scalar::zero();
        for x in objects {
            for a in samples {
                for a2 in samples.iter().filter(|s| *s >= a) {
                    for b in samples {
                        for b2 in samples.iter().filter(|s| *s >= b) {
                            report.record(Diagram::Naturality, self.square(a, a2, b, b2, x));
                        }
                    }
                }
                for b in samples {
                    for c in samples {
                        report.record(Diagram::Associativity, self.associativity(a, b, c, x));
                    }
                }
                report.record(Diagram::Unit, self.unit(a, x));
            }
            if !samples.is_empty() {
                report.record(Diagram::Unit, self.unit(&zero, x));
            }
        }
        report
    }

    /// `K_{a'} K_{b'} x → K_a K_b x` two ways: factorwise restriction versus
    /// `ρ_{a+b, a'+b'}`; both must also be the identity when `a = a'`, `b = b'`.
    fn square(
        &self,
        a: &Scalar,
        a2: &Scalar,
        b: &Scalar,
        b2: &Scalar,
        x: &A::Object,
    ) -> std::result::Result<(), String> {
        let err = |e: Error| e.to_string();
        let inner = self.extend_restrict(b, b2, x).map_err(err)?;
        let first = self.extend_apply_morphism(a2, &inner).map_err(err)?;
        let kbx = self.extend_apply(b, x).map_err(err)?;
        let second = self.extend_restrict(a, a2, &kbx).map_err(err)?;
        let factorwise = self.action.compose(&first, &second).map_err(err)?;
        let direct = self
            .extend_restrict(&(a + b), &(a2 + b2), x)
            .map_err(err)?;
        if factorwise != direct {
            return Err(format!(
                "a={a}, a'={a2}, b={b}, b'={b2}: {factorwise:?} vs {direct:?}"
            ));
        }
        if a == a2 && b == b2 {
            let id = self.action.identity(&self.action.source(&direct));
            if direct != id {
                return Err(format!("ρ_{{{0},{0}}} on {x:?} is not the identity", a + b));
            }
        }
        Ok(())
    }

    fn associativity(
        &self,
        a: &Scalar,
        b: &Scalar,
        c: &Scalar,
        x: &A::Object,
    ) -> std::result::Result<(), String> {
        let err = |e: Error| e.to_string();
        let left = self
            .extend_apply(a, &self.extend_apply(&(b + c), x).map_err(err)?)
            .map_err(err)?;
        let right = self
            .extend_apply(&(a + b), &self.extend_apply(c, x).map_err(err)?)
            .map_err(err)?;
        let direct = self.extend_apply(&(a + b + c), x).map_err(err)?;
        if !self.action.objects_equal(&left, &right) || !self.action.objects_equal(&left, &direct) {
            return Err(format!("a={a}, b={b}, c={c}: {left:?}, {right:?}, {direct:?}"));
        }
        Ok(())
    }

    fn unit(&self, a: &Scalar, x: &A::Object) -> std::result::Result<(), String> {
        let err = |e: Error| e.to_string();
        let zero = Scalar::zero();
        let kax = self.extend_apply(a, x).map_err(err)?;
        let before = self
            .extend_apply(a, &self.extend_apply(&zero, x).map_err(err)?)
            .map_err(err)?;
        let after = self.extend_apply(&zero, &kax).map_err(err)?;
        if !self.action.objects_equal(&before, &kax) || !self.action.objects_equal(&after, &kax) {
            return Err(format!("a={a}: {before:?}, {kax:?}, {after:?}"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diagram {
    /// (i) naturality of the restrictions with respect to composition.
    Naturality,
    /// (ii) associativity of the composition isomorphisms.
    Associativity,
    /// (iii) unit triangles.
    Unit,
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Diagram::Naturality => "(i) naturality",
            Diagram::Associativity => "(ii) associativity",
            Diagram::Unit => "(iii) unit",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoherenceReport {
    pub checked: usize,
    pub failures: Vec<(Diagram, String)>,
}

impl CoherenceReport {
    fn record(&mut self, d: Diagram, r: std::result::Result<(), String>) {
        self.checked += 1;
        if let Err(msg) = r {
            self.failures.push((d, msg));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, d: Diagram) -> bool {
        self.failures.iter().any(|(x, _)| *x == d)
    }
}

/// Fault injected into a built-in seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    None,
    /// Every seed restriction is replaced by the zero morphism.
    ZeroRestriction,
}

/// The thickening seed on barcodes of the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineAction {
    pub fault: Fault,
}

impl ThickeningAction for LineAction {
    type Object = GradedBarcode;
    type Morphism = Morphism;

    fn apply(&self, a: &Scalar, x: &GradedBarcode) -> Result<GradedBarcode> {
        Ok(thicken::thicken(x, a))
    }

    fn restrict(&self, a: &Scalar, b: &Scalar, x: &GradedBarcode) -> Result<Morphism> {
        let rho = thicken::restriction(x, a, b)?;
        Ok(match self.fault {
            Fault::None => rho,
            Fault::ZeroRestriction => Morphism::zero(rho.source().clone(), rho.target().clone()),
        })
    }

    fn apply_morphism(&self, a: &Scalar, m: &Morphism) -> Result<Morphism> {
        Ok(hom::thicken_morphism(m, a))
    }

    fn compose(&self, m1: &Morphism, m2: &Morphism) -> Result<Morphism> {
        hom::compose(m1, m2)
    }

    fn identity(&self, x: &GradedBarcode) -> Morphism {
        Morphism::identity(x)
    }

    fn source(&self, m: &Morphism) -> GradedBarcode {
        m.source().clone()
    }

    fn target(&self, m: &Morphism) -> GradedBarcode {
        m.target().clone()
    }

    fn objects_equal(&self, x: &GradedBarcode, y: &GradedBarcode) -> bool {
        iso_equal(x, y).unwrap_or(false)
    }
}

pub fn line_seed(alpha: Scalar, mode: Mode, fault: Fault) -> Result<SeedFamily<LineAction>> {
    SeedFamily::new(alpha, mode, LineAction { fault })
}
