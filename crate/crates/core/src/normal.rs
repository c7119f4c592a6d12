//! Rewriting of [`SpaceExpr`] into a wedge of suspended smash monomials.
//!
//! The rules below are applied until no redex remains. The irreducible tree
//! is then read off as a [`WedgeNormalForm`]. Any surviving product, half
//! smash or loop node means the expression is outside what the rules can
//! decompose, and is reported as an unsupported rewrite.
//!
//! | rule              | rewrite                                                     |
//! |-------------------|-------------------------------------------------------------|
//! | `join`            | `X * Y  ->  Σ(X ∧ Y)`                                        |
//! | `prodsusp`        | `Σ(Y1 × .. × Yn) -> ⋁_{∅≠I} Σ(∧_{i∈I} Yi)`, also inside `Σ(.. ∧ P ∧ ..)` |
//! | `prodsusp-binary` | `Σ(A × B) -> ΣA ∨ ΣB ∨ Σ(A ∧ B)` (opt-in alternative)         |
//! | `halfsmash`       | `A ⋊ B -> A ∨ (A ∧ B)` when `A` is irreducible and a suspension |
//! | `loop-generator`  | `ΩX -> declared loop space of X`                             |
//! | `loop-product`    | `Ω(X × Y) -> ΩX × ΩY`                                        |
//! | `susp-sphere`     | `ΣS^d -> S^{d+1}`                                            |
//! | `smash-sphere`    | `S^a ∧ S^b -> S^{a+b}`                                       |
//! | `distribute`      | smash and suspension distribute over wedges                  |
//! | `susp-hoist`      | `.. ∧ ΣX ∧ .. -> Σ(.. ∧ X ∧ ..)`                             |
//! | `sphere-unfold`   | `S^d ∧ P ∧ .. -> Σ(S^{d-1} ∧ P ∧ ..)` when a product is present |
//! | structural        | point absorption, smash unit, singletons, flattening        |

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::expr::{Generator, SpaceExpr};

/// Default cap on rewrite steps for a single normalization.
pub const DEFAULT_STEP_BUDGET: usize = 1 << 22;

/// `Σ^shift (g_1 ∧ .. ∧ g_r)` with the generators sorted. No generators
/// means the sphere `S^shift`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub shift: u32,
    pub generators: Vec<Generator>,
}

impl Monomial {
    pub fn sphere(d: u32) -> Self {
        Monomial {
            shift: d,
            generators: Vec::new(),
        }
    }

    pub fn generator(g: Generator) -> Self {
        Monomial {
            shift: 0,
            generators: vec![g],
        }
    }

    pub fn is_sphere(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn smash(&self, other: &Monomial) -> Monomial {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        generators.sort();
        Monomial {
            shift: self.shift + other.shift,
            generators,
        }
    }

    pub fn suspend(&self, k: u32) -> Monomial {
        Monomial {
            shift: self.shift + k,
            generators: self.generators.clone(),
        }
    }

    /// Canonical expression: spheres first, then generators by name.
    pub fn to_expr(&self) -> SpaceExpr {
        if self.generators.is_empty() {
            return SpaceExpr::Sphere(self.shift);
        }
        let mut factors = Vec::with_capacity(self.generators.len() + 1);
        if self.shift > 0 {
            factors.push(SpaceExpr::Sphere(self.shift));
        }
        factors.extend(self.generators.iter().cloned().map(SpaceExpr::Generator));
        if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            SpaceExpr::Smash(factors)
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

type Terms = BTreeMap<Monomial, BigUint>;

fn add_term(terms: &mut Terms, m: Monomial, mult: BigUint) {
    if mult.is_zero() {
        return;
    }
    *terms.entry(m).or_insert_with(BigUint::zero) += mult;
}

/// A wedge of spheres with multiplicities, plus any smash monomials over
/// generators that did not reduce to spheres.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WedgeNormalForm {
    spheres: BTreeMap<u32, BigUint>,
    residual: BTreeMap<Monomial, BigUint>,
}

impl WedgeNormalForm {
    /// The one-point space.
    pub fn point() -> Self {
        Self::default()
    }

    pub fn sphere(d: u32) -> Result<Self> {
        Self::from_monomials([(Monomial::sphere(d), BigUint::one())])
    }

    /// Collects monomials with multiplicities. Fails on `S^0`, which is only
    /// meaningful as a smash unit.
    pub fn from_monomials<I: IntoIterator<Item = (Monomial, BigUint)>>(items: I) -> Result<Self> {
        let mut out = WedgeNormalForm::default();
        for (m, mult) in items {
            out.add(m, mult)?;
        }
        Ok(out)
    }

    fn add(&mut self, m: Monomial, mult: BigUint) -> Result<()> {
        if mult.is_zero() {
            return Ok(());
        }
        if m.is_sphere() {
            if m.shift == 0 {
                return Err(Error::UnsupportedRewrite(
                    "S^0 is disconnected and only allowed as a smash unit".into(),
                ));
            }
            *self.spheres.entry(m.shift).or_insert_with(BigUint::zero) += mult;
        } else {
            add_term(&mut self.residual, m, mult);
        }
        Ok(())
    }

    /// Sphere multiplicities by dimension, no zero entries.
    pub fn spheres(&self) -> &BTreeMap<u32, BigUint> {
        &self.spheres
    }

    pub fn residual(&self) -> &BTreeMap<Monomial, BigUint> {
        &self.residual
    }

    pub fn multiplicity(&self, dim: u32) -> BigUint {
        self.spheres.get(&dim).cloned().unwrap_or_default()
    }

    pub fn is_sphere_wedge(&self) -> bool {
        self.residual.is_empty()
    }

    pub fn is_point(&self) -> bool {
        self.spheres.is_empty() && self.residual.is_empty()
    }

    /// Every summand is a suspension (vacuously true for a point).
    pub fn is_suspension(&self) -> bool {
        self.residual.keys().all(|m| m.shift > 0)
    }

    /// All summands with multiplicity, spheres first.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigUint)> + '_ {
        self.spheres
            .iter()
            .map(|(d, c)| (Monomial::sphere(*d), c))
            .chain(self.residual.iter().map(|(m, c)| (m.clone(), c)))
    }

    /// Total number of wedge summands counted with multiplicity.
    pub fn summand_count(&self) -> BigUint {
        self.spheres.values().chain(self.residual.values()).sum()
    }

    pub fn wedge(&self, other: &WedgeNormalForm) -> WedgeNormalForm {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add(m, c.clone()).expect("normal forms never hold S^0");
        }
        out
    }

    pub fn scale(&self, k: &BigUint) -> WedgeNormalForm {
        if k.is_zero() {
            return WedgeNormalForm::point();
        }
        WedgeNormalForm {
            spheres: self.spheres.iter().map(|(d, c)| (*d, c * k)).collect(),
            residual: self.residual.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Smash product, distributed over both wedges.
    pub fn smash(&self, other: &WedgeNormalForm) -> WedgeNormalForm {
        let mut out = WedgeNormalForm::default();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add(a.smash(&b), ca * cb).expect("positive shifts stay positive");
            }
        }
        out
    }

    /// `k`-fold suspension.
    pub fn suspend(&self, k: u32) -> WedgeNormalForm {
        WedgeNormalForm {
            spheres: self.spheres.iter().map(|(d, c)| (d + k, c.clone())).collect(),
            residual: self.residual.iter().map(|(m, c)| (m.suspend(k), c.clone())).collect(),
        }
    }

    /// Expression form: a wedge with each summand repeated by multiplicity.
    pub fn to_expr(&self) -> Result<SpaceExpr> {
        let mut children = Vec::new();
        for (m, c) in self.terms() {
            let reps = c.to_usize().ok_or(Error::ResourceLimit {
                what: "wedge multiplicity",
                actual: usize::MAX,
                bound: usize::MAX,
            })?;
            let e = m.to_expr();
            children.extend(std::iter::repeat_n(e, reps));
        }
        Ok(match children.len() {
            0 => SpaceExpr::Point,
            1 => children.pop().unwrap(),
            _ => SpaceExpr::Wedge(children),
        })
    }
}

impl fmt::Display for WedgeNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return f.write_str("pt");
        }
        let single = self.spheres.len() + self.residual.len() == 1;
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                f.write_str(" v ")?;
            }
            first = false;
            if !c.is_one() {
                write!(f, "{c} ")?;
            }
            let atomic = m.is_sphere() || m.generators.len() == 1 && m.shift == 0;
            if atomic || single && c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({m})")?;
            }
        }
        Ok(())
    }
}

/// Reduced Betti numbers of a wedge of spheres: entry `d` is the number of
/// `S^d` summands, and entry `0` is `1` for the basepoint component.
pub fn betti_of(w: &WedgeNormalForm) -> Result<Vec<BigUint>> {
    if !w.is_sphere_wedge() {
        return Err(Error::NotASphereWedge(w.residual.len()));
    }
    let top = w.spheres.keys().next_back().copied().unwrap_or(0) as usize;
    let mut out = vec![BigUint::zero(); top + 1];
    out[0] = BigUint::one();
    for (d, c) in &w.spheres {
        out[*d as usize] += c;
    }
    Ok(out)
}

/// The decomposed pushout `(A * B) ∨ (C ⋊ B)`, unevaluated.
pub fn podecomp(a: SpaceExpr, b: SpaceExpr, c: SpaceExpr) -> SpaceExpr {
    SpaceExpr::Wedge(vec![SpaceExpr::join(a, b.clone()), SpaceExpr::half_smash(c, b)])
}

/// Names of the rewrite rules, used for traces and strategy control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Join,
    ProdSusp,
    ProdSuspBinary,
    HalfSmash,
    LoopGenerator,
    LoopProduct,
    LoopPoint,
    SuspSphere,
    SmashSphere,
    SmashUnit,
    PointAbsorb,
    Singleton,
    Flatten,
    Distribute,
    SuspHoist,
    SphereUnfold,
}

impl Rule {
    pub const ALL: [Rule; 16] = [
        Rule::Join,
        Rule::ProdSusp,
        Rule::ProdSuspBinary,
        Rule::HalfSmash,
        Rule::LoopGenerator,
        Rule::LoopProduct,
        Rule::LoopPoint,
        Rule::SuspSphere,
        Rule::SmashSphere,
        Rule::SmashUnit,
        Rule::PointAbsorb,
        Rule::Singleton,
        Rule::Flatten,
        Rule::Distribute,
        Rule::SuspHoist,
        Rule::SphereUnfold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Join => "join",
            Rule::ProdSusp => "prodsusp",
            Rule::ProdSuspBinary => "prodsusp-binary",
            Rule::HalfSmash => "halfsmash",
            Rule::LoopGenerator => "loop-generator",
            Rule::LoopProduct => "loop-product",
            Rule::LoopPoint => "loop-point",
            Rule::SuspSphere => "susp-sphere",
            Rule::SmashSphere => "smash-sphere",
            Rule::SmashUnit => "smash-unit",
            Rule::PointAbsorb => "point-absorb",
            Rule::Singleton => "singleton",
            Rule::Flatten => "flatten",
            Rule::Distribute => "distribute",
            Rule::SuspHoist => "susp-hoist",
            Rule::SphereUnfold => "sphere-unfold",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Order in which redexes are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Children before parents, rules tried in declaration order.
    Innermost,
    /// Uniformly random redex among all positions and rules.
    Random(u64),
}

/// Outcome of a traced normalization.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub normal_form: WedgeNormalForm,
    pub irreducible: SpaceExpr,
    pub steps: usize,
    pub rule_counts: BTreeMap<Rule, usize>,
    /// Monomials in the irreducible tree before equal summands are merged.
    pub premerge_summands: usize,
}

/// Configurable rewriting driver.
#[derive(Clone, Debug)]
pub struct Normalizer {
    pub strategy: Strategy,
    pub step_budget: usize,
    /// Offer the binary suspension splitting alongside the n-ary one.
    pub binary_prodsusp: bool,
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer {
            strategy: Strategy::Innermost,
            step_budget: DEFAULT_STEP_BUDGET,
            binary_prodsusp: false,
        }
    }
}

/// Normalizes with the default innermost strategy.
pub fn normalize(e: &SpaceExpr) -> Result<WedgeNormalForm> {
    Normalizer::default().run(e).map(|n| n.normal_form)
}

struct Run<'a> {
    cfg: &'a Normalizer,
    steps: usize,
    counts: BTreeMap<Rule, usize>,
}

impl Run<'_> {
    fn tick(&mut self, rule: Rule) -> Result<()> {
        self.steps += 1;
        *self.counts.entry(rule).or_insert(0) += 1;
        if self.steps > self.cfg.step_budget {
            return Err(Error::StepBudgetExceeded(self.cfg.step_budget));
        }
        Ok(())
    }

    fn enabled(&self, rule: Rule) -> bool {
        rule != Rule::ProdSuspBinary || self.cfg.binary_prodsusp
    }

    fn innermost(&mut self, mut e: SpaceExpr) -> Result<SpaceExpr> {
        loop {
            for child in e.children_mut() {
                let c = std::mem::replace(child, SpaceExpr::Point);
                *child = self.innermost(c)?;
            }
            let fired = Rule::ALL
                .iter()
                .filter(|r| self.enabled(**r))
                .find_map(|r| apply(*r, &e, true).map(|out| (*r, out)));
            match fired {
                Some((rule, out)) => {
                    self.tick(rule)?;
                    e = out;
                }
                None => return Ok(e),
            }
        }
    }

    fn random(&mut self, mut e: SpaceExpr, seed: u64) -> Result<SpaceExpr> {
        let mut rng = StdRng::seed_from_u64(seed);
        loop {
            let mut redexes = Vec::new();
            self.collect(&e, &mut Vec::new(), &mut redexes);
            if redexes.is_empty() {
                return Ok(e);
            }
            let (path, rule, left_irreducible) = redexes.swap_remove(rng.gen_range(0..redexes.len()));
            self.tick(rule)?;
            let node = node_at(&mut e, &path);
            *node = apply(rule, node, left_irreducible).expect("collected redex applies");
        }
    }

    /// Pushes every redex below `e` and reports whether `e` has none.
    fn collect(&self, e: &SpaceExpr, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Rule, bool)>) -> bool {
        let before = out.len();
        let mut first_child_irreducible = false;
        for (i, c) in e.children().enumerate() {
            path.push(i);
            let irreducible = self.collect(c, path, out);
            path.pop();
            if i == 0 {
                first_child_irreducible = irreducible;
            }
        }
        let left_irreducible = matches!(e, SpaceExpr::HalfSmash(..)) && first_child_irreducible;
        for rule in Rule::ALL {
            if !self.enabled(rule) {
                continue;
            }
            if apply(rule, e, left_irreducible).is_some() {
                out.push((path.clone(), rule, left_irreducible));
            }
        }
        out.len() == before
    }
}

fn node_at<'a>(e: &'a mut SpaceExpr, path: &[usize]) -> &'a mut SpaceExpr {
    match path.split_first() {
        None => e,
        Some((i, rest)) => {
            let child = e.children_mut().into_iter().nth(*i).expect("valid path");
            node_at(child, rest)
        }
    }
}

impl Normalizer {
    pub fn with_strategy(strategy: Strategy) -> Self {
        Normalizer {
            strategy,
            ..Self::default()
        }
    }

    /// Rewrites `e` to an irreducible tree and reads off its normal form.
    pub fn run(&self, e: &SpaceExpr) -> Result<Normalized> {
        let mut run = Run {
            cfg: self,
            steps: 0,
            counts: BTreeMap::new(),
        };
        let irreducible = match self.strategy {
            Strategy::Innermost => run.innermost(e.clone())?,
            Strategy::Random(seed) => run.random(e.clone(), seed)?,
        };
        let monomials = denote(&irreducible)?;
        let premerge_summands = monomials.len();
        let normal_form = WedgeNormalForm::from_monomials(monomials.into_iter().map(|m| (m, BigUint::one())))?;
        Ok(Normalized {
            normal_form,
            irreducible,
            steps: run.steps,
            rule_counts: run.counts,
            premerge_summands,
        })
    }
}

/// Reads an irreducible tree as a list of monomials, one per wedge summand.
fn denote(e: &SpaceExpr) -> Result<Vec<Monomial>> {
    use SpaceExpr::*;
    Ok(match e {
        Point => Vec::new(),
        Sphere(d) => vec![Monomial::sphere(*d)],
        Generator(g) => vec![Monomial::generator(g.clone())],
        Wedge(xs) => {
            let mut out = Vec::new();
            for x in xs {
                out.extend(denote(x)?);
            }
            out
        }
        Smash(xs) => {
            let mut acc = vec![Monomial::sphere(0)];
            for x in xs {
                let factor = denote(x)?;
                acc = acc
                    .iter()
                    .flat_map(|a| factor.iter().map(move |b| a.smash(b)))
                    .collect();
            }
            acc
        }
        Susp(x) => denote(x)?.into_iter().map(|m| m.suspend(1)).collect(),
        Product(_) => {
            return Err(Error::UnsupportedRewrite(format!(
                "product `{e}` does not sit under a suspension"
            )))
        }
        HalfSmash(a, _) => {
            return Err(Error::UnsupportedRewrite(format!(
                "half-smash `{e}`: left factor `{a}` is not a suspension"
            )))
        }
        Loop(x) => return Err(Error::UnsupportedRewrite(format!("no loop rule for `{x}`"))),
        Join(..) => unreachable!("joins always rewrite"),
    })
}

fn is_suspension_form(e: &SpaceExpr) -> bool {
    denote(e).is_ok_and(|ms| ms.iter().all(|m| m.shift > 0))
}

fn smash_of(mut xs: Vec<SpaceExpr>) -> SpaceExpr {
    if xs.len() == 1 {
        xs.pop().unwrap()
    } else {
        SpaceExpr::Smash(xs)
    }
}

/// Splits a product factor of a smash list into `2^n - 1` smash lists.
fn split_product_in(xs: &[SpaceExpr], at: usize, factors: &[SpaceExpr]) -> Vec<SpaceExpr> {
    let n = factors.len();
    (1u64..(1u64 << n))
        .map(|mask| {
            let mut items = Vec::with_capacity(xs.len() + n);
            items.extend_from_slice(&xs[..at]);
            items.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| factors[i].clone()));
            items.extend_from_slice(&xs[at + 1..]);
            SpaceExpr::susp(smash_of(items))
        })
        .collect()
}

/// Binary splitting `Σ(A × R) ∧ Z = Σ(A ∧ Z) ∨ Σ(R ∧ Z) ∨ Σ(A ∧ R ∧ Z)`.
fn split_product_binary(xs: &[SpaceExpr], at: usize, factors: &[SpaceExpr]) -> Vec<SpaceExpr> {
    let head = factors[0].clone();
    let rest = if factors.len() == 2 {
        factors[1].clone()
    } else {
        SpaceExpr::Product(factors[1..].to_vec())
    };
    let with = |fs: Vec<SpaceExpr>| {
        let mut items = Vec::with_capacity(xs.len() + 1);
        items.extend_from_slice(&xs[..at]);
        items.extend(fs);
        items.extend_from_slice(&xs[at + 1..]);
        SpaceExpr::susp(smash_of(items))
    };
    vec![
        with(vec![head.clone()]),
        with(vec![rest.clone()]),
        with(vec![head, rest]),
    ]
}

fn product_in(xs: &[SpaceExpr]) -> Option<(usize, &[SpaceExpr])> {
    xs.iter().enumerate().find_map(|(i, x)| match x {
        SpaceExpr::Product(fs) if fs.len() >= 2 => Some((i, fs.as_slice())),
        _ => None,
    })
}

/// Tries one rule at the root of `e`. `left_irreducible` is the caller's
/// knowledge that the left factor of a half-smash is already normal.
fn apply(rule: Rule, e: &SpaceExpr, left_irreducible: bool) -> Option<SpaceExpr> {
    use SpaceExpr::*;
    match (rule, e) {
        (Rule::Join, Join(a, b)) => Some(SpaceExpr::susp(Smash(vec![(**a).clone(), (**b).clone()]))),

        (Rule::ProdSusp | Rule::ProdSuspBinary, Susp(inner)) => {
            let split = if rule == Rule::ProdSusp {
                split_product_in
            } else {
                split_product_binary
            };
            match inner.as_ref() {
                Product(fs) if fs.len() >= 2 => Some(Wedge(split(&[inner.as_ref().clone()], 0, fs))),
                Smash(xs) => product_in(xs).map(|(at, fs)| Wedge(split(xs, at, fs))),
                _ => None,
            }
        }

        (Rule::HalfSmash, HalfSmash(a, b)) if left_irreducible && is_suspension_form(a) => {
            Some(Wedge(vec![(**a).clone(), Smash(vec![(**a).clone(), (**b).clone()])]))
        }

        (Rule::LoopGenerator, Loop(x)) => match x.as_ref() {
            Generator(g) => g.loop_space.as_deref().cloned(),
            _ => None,
        },
        (Rule::LoopProduct, Loop(x)) => match x.as_ref() {
            Product(fs) => Some(Product(fs.iter().cloned().map(SpaceExpr::loop_of).collect())),
            _ => None,
        },
        (Rule::LoopPoint, Loop(x)) if **x == Point => Some(Point),

        (Rule::SuspSphere, Susp(x)) => match x.as_ref() {
            Sphere(d) => Some(Sphere(d + 1)),
            _ => None,
        },

        (Rule::SmashSphere, Smash(xs)) => {
            let mut spheres = xs.iter().enumerate().filter_map(|(i, x)| match x {
                Sphere(d) => Some((i, *d)),
                _ => None,
            });
            let (i, a) = spheres.next()?;
            let (j, b) = spheres.next()?;
            let mut out = xs.clone();
            out[i] = Sphere(a + b);
            out.remove(j);
            Some(smash_of(out))
        }
        (Rule::SmashUnit, Smash(xs)) if xs.len() >= 2 => {
            let i = xs.iter().position(|x| *x == Sphere(0))?;
            let mut out = xs.clone();
            out.remove(i);
            Some(smash_of(out))
        }

        (Rule::PointAbsorb, Smash(xs)) if xs.contains(&Point) => Some(Point),
        (Rule::PointAbsorb, Susp(x)) if **x == Point => Some(Point),
        (Rule::PointAbsorb, Wedge(xs) | Product(xs)) if xs.len() >= 2 && xs.contains(&Point) => {
            let kept: Vec<SpaceExpr> = xs.iter().filter(|x| **x != Point).cloned().collect();
            Some(match (kept.len(), e) {
                (0, _) => Point,
                (1, _) => kept.into_iter().next().unwrap(),
                (_, Wedge(_)) => Wedge(kept),
                _ => Product(kept),
            })
        }

        (Rule::Singleton, Wedge(xs) | Smash(xs) | Product(xs)) if xs.len() == 1 => Some(xs[0].clone()),

        (Rule::Flatten, Wedge(xs)) if xs.iter().any(|x| matches!(x, Wedge(_))) => Some(Wedge(
            xs.iter()
                .flat_map(|x| match x {
                    Wedge(ys) => ys.clone(),
                    other => vec![other.clone()],
                })
                .collect(),
        )),
        (Rule::Flatten, Smash(xs)) if xs.iter().any(|x| matches!(x, Smash(_))) => Some(Smash(
            xs.iter()
                .flat_map(|x| match x {
                    Smash(ys) => ys.clone(),
                    other => vec![other.clone()],
                })
                .collect(),
        )),
        (Rule::Flatten, Product(xs)) if xs.iter().any(|x| matches!(x, Product(_))) => Some(Product(
            xs.iter()
                .flat_map(|x| match x {
                    Product(ys) => ys.clone(),
                    other => vec![other.clone()],
                })
                .collect(),
        )),

        (Rule::Distribute, Smash(xs)) => {
            let (i, ws) = xs.iter().enumerate().find_map(|(i, x)| match x {
                Wedge(ws) => Some((i, ws)),
                _ => None,
            })?;
            Some(Wedge(
                ws.iter()
                    .map(|w| {
                        let mut items = xs.clone();
                        items[i] = w.clone();
                        Smash(items)
                    })
                    .collect(),
            ))
        }
        (Rule::Distribute, Susp(x)) => match x.as_ref() {
            Wedge(ws) => Some(Wedge(ws.iter().cloned().map(SpaceExpr::susp).collect())),
            _ => None,
        },

        (Rule::SuspHoist, Smash(xs)) => {
            let i = xs.iter().position(|x| matches!(x, Susp(_)))?;
            let mut items = xs.clone();
            let Susp(inner) = std::mem::replace(&mut items[i], Point) else {
                unreachable!()
            };
            items[i] = *inner;
            Some(SpaceExpr::susp(Smash(items)))
        }

        (Rule::SphereUnfold, Smash(xs)) if xs.iter().any(|x| matches!(x, Product(_))) => {
            let i = xs.iter().position(|x| matches!(x, Sphere(d) if *d >= 1))?;
            let Sphere(d) = xs[i] else { unreachable!() };
            let mut items = xs.clone();
            items[i] = Sphere(d - 1);
            Some(SpaceExpr::susp(Smash(items)))
        }

        _ => None,
    }
}

/// Number of wedge summands produced by a single n-ary splitting of
/// `Σ(Y_1 × .. × Y_n)`, before anything else is rewritten.
pub fn prodsusp_summands(n: usize) -> usize {
    match apply(
        Rule::ProdSusp,
        &SpaceExpr::susp(SpaceExpr::Product(vec![SpaceExpr::Point; n])),
        false,
    ) {
        Some(SpaceExpr::Wedge(xs)) => xs.len(),
        _ => 1,
    }
}
