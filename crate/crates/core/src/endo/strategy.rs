//! Staged search for splitting elements. Each stage is a [`SplitStrategy`]
//! registered by name; [`SearchConfig::strategies`] picks which run and in
//! what order.

use std::sync::Arc;

use indexmap::IndexMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::certificate::{Evidence, IndecomposableProof, SplitEvidence, SplitSource, TrailEntry, TrailOutcome};
use super::enumerate::{element_count, scan_idempotents};
use super::{fitting_split, projection, radical_char0, Certificate, EndoAlgebra};
use crate::algebra::matrix::Vector;
use crate::algebra::{factor_gfp, factor_q, min_poly, Field, Poly};
use crate::error::{Error, Result};

/// Search budgets and the strategy pipeline. Echoed into every certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub exhaustive_cap: u64,
    pub box_height: u32,
    pub random_trials: u32,
    pub seed: u64,
    pub degree_cap: usize,
    pub strategies: Vec<String>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            exhaustive_cap: 1 << 22,
            box_height: 5,
            random_trials: 64,
            seed: 0,
            degree_cap: crate::algebra::DEFAULT_DEGREE_CAP,
            strategies: StrategyRegistry::builtin().names(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("exhaustive cap", self.exhaustive_cap),
            ("box height", self.box_height as u64),
            ("random trials", self.random_trials as u64),
            ("degree cap", self.degree_cap as u64),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

/// What one strategy concluded.
#[derive(Clone, Debug)]
pub enum StrategyOutcome {
    Split(SplitEvidence),
    Proved(IndecomposableProof),
    Inconclusive(String),
}

/// Shared state for one search: the algebra, budgets, a seeded generator and
/// the deterministic scan sequence.
pub struct SearchContext<'a> {
    pub endo: &'a EndoAlgebra,
    pub config: &'a SearchConfig,
    pub rng: ChaCha8Rng,
    scan: Vec<Vector>,
}

impl<'a> SearchContext<'a> {
    pub fn new(endo: &'a EndoAlgebra, config: &'a SearchConfig) -> Self {
        SearchContext {
            endo,
            config,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            scan: scan_sequence(endo),
        }
    }

    /// Basis elements, then `b_i + b_j` and `b_i − b_j` for `i < j`.
    pub fn scan(&self) -> &[Vector] {
        &self.scan
    }
}

fn scan_sequence(endo: &EndoAlgebra) -> Vec<Vector> {
    let d = endo.dim();
    let f = endo.field();
    let unit = |i: usize| {
        let mut v = endo.zero();
        v[i] = f.one();
        v
    };
    let mut out: Vec<Vector> = (0..d).map(unit).collect();
    for i in 0..d {
        for j in i + 1..d {
            let mut s = unit(i);
            s[j] = f.one();
            out.push(s);
            if f.characteristic() != 2 {
                let mut t = unit(i);
                t[j] = -f.one();
                out.push(t);
            }
        }
    }
    out
}

/// A named way of looking for a splitting element or a locality proof.
pub trait SplitStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn applies_to(&self, field: Field) -> bool;
    fn search(&self, ctx: &mut SearchContext<'_>) -> Result<StrategyOutcome>;
}

/// Strategies by name, in registration order.
#[derive(Clone, Default)]
pub struct StrategyRegistry {
    entries: IndexMap<&'static str, Arc<dyn SplitStrategy>>,
}

impl StrategyRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The default pipeline.
    pub fn builtin() -> Self {
        let mut r = StrategyRegistry::new();
        let all: [Arc<dyn SplitStrategy>; 7] = [
            Arc::new(DimensionOne),
            Arc::new(Scan),
            Arc::new(Exhaustive),
            Arc::new(MinPoly),
            Arc::new(Radical),
            Arc::new(RandomElements),
            Arc::new(BoxSearch),
        ];
        for s in all {
            r.register(s).expect("builtin names are distinct");
        }
        r
    }

    pub fn register(&mut self, s: Arc<dyn SplitStrategy>) -> Result<()> {
        let name = s.name();
        if self.entries.contains_key(name) {
            return Err(Error::DuplicateLabel(name.to_string()));
        }
        self.entries.insert(name, s);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Arc<dyn SplitStrategy>> {
        self.entries.get(name)
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.keys().map(|k| k.to_string()).collect()
    }
}

impl std::fmt::Debug for StrategyRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}

/// Runs the configured pipeline with the built-in registry.
pub fn find_splitting_element(endo: &EndoAlgebra, config: &SearchConfig) -> Result<Certificate> {
    find_splitting_element_with(endo, config, &StrategyRegistry::builtin())
}

/// Runs `config.strategies` in order until one splits or proves; otherwise
/// the verdict is undecided. Fails only on a bad configuration or an empty module.
pub fn find_splitting_element_with(
    endo: &EndoAlgebra,
    config: &SearchConfig,
    registry: &StrategyRegistry,
) -> Result<Certificate> {
    config.validate()?;
    if endo.module_dim() == 0 {
        return Err(Error::EmptyModule);
    }
    let pipeline = config
        .strategies
        .iter()
        .map(|n| {
            registry
                .get(n)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("unknown strategy `{n}`; known: {}", registry.names().join(", "))))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ctx = SearchContext::new(endo, config);
    let mut trail = Vec::new();
    for s in pipeline {
        let strategy = s.name().to_string();
        if !s.applies_to(endo.field()) {
            trail.push(TrailEntry {
                strategy,
                outcome: TrailOutcome::Skipped,
                detail: format!("not applicable over {}", endo.field()),
            });
            continue;
        }
        let (outcome, detail, evidence) = match s.search(&mut ctx)? {
            StrategyOutcome::Split(e) => (TrailOutcome::Split, "found a splitting element".to_string(), Some(Evidence::Split(e))),
            StrategyOutcome::Proved(p) => (TrailOutcome::Proved, "proved indecomposable".to_string(), Some(Evidence::Proof(p))),
            StrategyOutcome::Inconclusive(why) => (TrailOutcome::Inconclusive, why, None),
        };
        trail.push(TrailEntry { strategy, outcome, detail });
        if let Some(ev) = evidence {
            return Ok(Certificate::new(endo, ev, config.clone(), trail));
        }
    }
    let strategies = config.strategies.clone();
    Ok(Certificate::new(endo, Evidence::Exhausted { strategies }, config.clone(), trail))
}

// ---- shared element tests ----

fn split_with(endo: &EndoAlgebra, source: SplitSource, a: Vec<Vector>, b: Vec<Vector>) -> Result<SplitEvidence> {
    let idempotent = projection(endo.field(), endo.module_dim(), &a, &b)?;
    Ok(SplitEvidence {
        source,
        idempotent,
        summands: [a, b],
    })
}

fn try_fitting(endo: &EndoAlgebra, coords: &[crate::algebra::Scalar]) -> Result<Option<SplitEvidence>> {
    let e = endo.matrix_of(coords);
    if e.rank() == endo.module_dim() {
        return Ok(None);
    }
    match fitting_split(endo, &e)? {
        Some((ker, im)) => {
            let power = endo.module_dim();
            Ok(Some(split_with(endo, SplitSource::Fitting { element: e, power }, im, ker)?))
        }
        None => Ok(None),
    }
}

enum MinPolyFinding {
    Split(SplitEvidence),
    Proved(IndecomposableProof),
    Nothing,
}

fn factor_in_field(f: &Poly, degree_cap: usize) -> Result<Option<crate::algebra::Factorization>> {
    let r = match f.field() {
        Field::Rational => factor_q(f, degree_cap),
        Field::Prime(_) => factor_gfp(f),
    };
    match r {
        Ok(fac) => Ok(Some(fac)),
        Err(Error::DegreeCapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn try_min_poly(endo: &EndoAlgebra, coords: &[crate::algebra::Scalar], degree_cap: usize) -> Result<MinPolyFinding> {
    let e = endo.matrix_of(coords);
    let mp = min_poly(&e)?;
    let Some(fac) = factor_in_field(&mp, degree_cap)? else {
        return Ok(MinPolyFinding::Nothing);
    };
    if fac.factors.len() >= 2 {
        let (f1, k1) = fac.factors[0].clone();
        let first = f1.pow(k1);
        let rest = mp.exact_div(&first).expect("factor divides the minimal polynomial");
        let a = first.eval_matrix(&e)?.kernel_basis();
        let b = rest.eval_matrix(&e)?.kernel_basis();
        let source = SplitSource::PrimaryComponents {
            element: e,
            min_poly: mp,
            factor: f1,
            multiplicity: k1,
        };
        return Ok(MinPolyFinding::Split(split_with(endo, source, a, b)?));
    }
    if mp.degree() == Some(endo.dim()) {
        let (f, k) = fac.factors[0].clone();
        let proof = if k == 1 {
            IndecomposableProof::FieldGenerated { element: e, min_poly: mp }
        } else {
            IndecomposableProof::PrimaryGenerated {
                element: e,
                min_poly: mp,
                factor: f,
                multiplicity: k,
            }
        };
        return Ok(MinPolyFinding::Proved(proof));
    }
    Ok(MinPolyFinding::Nothing)
}

// ---- built-in strategies ----

struct DimensionOne;

impl SplitStrategy for DimensionOne {
    fn name(&self) -> &'static str {
        "dimension-one"
    }
    fn applies_to(&self, _: Field) -> bool {
        true
    }
    fn search(&self, ctx: &mut SearchContext<'_>) -> Result<StrategyOutcome> {
        Ok(if ctx.endo.dim() == 1 {
            StrategyOutcome::Proved(IndecomposableProof::DimensionOne)
        } else {
            StrategyOutcome::Inconclusive(format!("endomorphism algebra has dimension {}", ctx.endo.dim()))
        })
    }
}

struct Scan;

impl SplitStrategy for Scan {
    fn name(&self) -> &'static str {
        "scan"
    }
    fn applies_to(&self, _: Field) -> bool {
        true
    }
    fn search(&self, ctx: &mut SearchContext<'_>) -> Result<StrategyOutcome> {
        for c in ctx.scan() {
            if let Some(ev) = try_fitting(ctx.endo, c)? {
                return Ok(StrategyOutcome::Split(ev));
            }
        }
        Ok(StrategyOutcome::Inconclusive(format!(
            "{} elements, each nilpotent or invertible",
            ctx.scan().len()
        )))
    }
}

struct Exhaustive;

impl SplitStrategy for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }
    fn applies_to(&self, field: Field) -> bool {
        field.is_finite()
    }
    fn search(&self, ctx: &mut SearchContext<'_>) -> Result<StrategyOutcome> {
        let endo = ctx.endo;
        let cap = ctx.config.exhaustive_cap;
        if element_count(endo.field(), endo.dim(), cap).is_err() {
            return Ok(StrategyOutcome::Inconclusive(format!(
                "{}^{} elements exceed the cap {cap}",
                endo.field().characteristic(),
                endo.dim()
            )));
        }
        let (ids, scanned) = scan_idempotents(endo, cap)?;
        let (zero, one) = (endo.zero(), endo.unit());
        if let Some(e) = ids.iter().find(|e| **e != zero && **e != one) {
            let em = endo.matrix_of(e);
            let summands = [super::image_basis(&em), em.kernel_basis()];
            return Ok(StrategyOutcome::Split(SplitEvidence {
                source: SplitSource::Idempotent,
                idempotent: em,
                summands,
            }));
        }
        Ok(StrategyOutcome::Proved(IndecomposableProof::Exhaustive {
            field_order: endo.field().characteristic(),
            endo_dim: endo.dim(),
            elements_scanned: scanned,
            idempotents: ids.len(),
        }))
    }
}

struct MinPoly;

impl SplitStrategy for MinPoly {
    fn name(&self) -> &'static str {
        "minpoly"
    }
    fn applies_to(&self, _: Field) -> bool {
        true
    }
    fn search(&self, ctx: &mut SearchContext<'_>) -> Result<StrategyOutcome> {
        for c in ctx.scan() {
            match try_min_poly(ctx.endo, c, ctx.config.degree_cap)? {
                MinPolyFinding::Split(ev) => return Ok(StrategyOutcome::Split(ev)),
                MinPolyFinding::Proved(p) => return Ok(StrategyOutcome::Proved(p)),
                MinPolyFinding::Nothing => {}
            }
        }
        Ok(StrategyOutcome::Inconclusive(format!(
            "no scanned element has a split or generating minimal polynomial ({} tried)",
            ctx.scan().len()
        )))
    }
}

struct Radical;

impl SplitStrategy for Radical {
    fn name(&self) -> &'static str {
        "radical"
    }
    fn applies_to(&self, field: Field) -> bool {
        field == Field::Rational
    }
    fn search(&self, ctx: &mut SearchContext<'_>) -> Result<StrategyOutcome> {
        let rad = radical_char0(ctx.endo)?;
        if rad.len() + 1 == ctx.endo.dim() {
            return Ok(StrategyOutcome::Proved(IndecomposableProof::RadicalCodimensionOne { radical_dim: rad.len() }));
        }
        Ok(StrategyOutcome::Inconclusive(format!(
            "radical has dimension {} of {}",
            rad.len(),
            ctx.endo.dim()
        )))
    }
}

struct RandomElements;

impl SplitStrategy for RandomElements {
    fn name(&self) -> &'static str {
        "random"
    }
    fn applies_to(&self, _: Field) -> bool {
        true
    }
    fn search(&self, ctx: &mut SearchContext<'_>) -> Result<StrategyOutcome> {
        let f = ctx.endo.field();
        let h = ctx.config.box_height as i64;
        for _ in 0..ctx.config.random_trials {
            let coords: Vector = (0..ctx.endo.dim())
                .map(|_| match f {
                    Field::Prime(p) => f.from_i64(ctx.rng.gen_range(0..p) as i64),
                    Field::Rational => f.from_i64(ctx.rng.gen_range(-h..=h)),
                })
                .collect();
            if let Some(ev) = try_fitting(ctx.endo, &coords)? {
                return Ok(StrategyOutcome::Split(ev));
            }
            match try_min_poly(ctx.endo, &coords, ctx.config.degree_cap)? {
                MinPolyFinding::Split(ev) => return Ok(StrategyOutcome::Split(ev)),
                MinPolyFinding::Proved(p) => return Ok(StrategyOutcome::Proved(p)),
                MinPolyFinding::Nothing => {}
            }
        }
        Ok(StrategyOutcome::Inconclusive(format!(
            "{} random elements (seed {})",
            ctx.config.random_trials, ctx.config.seed
        )))
    }
}

struct BoxSearch;

impl SplitStrategy for BoxSearch {
    fn name(&self) -> &'static str {
        "box"
    }
    fn applies_to(&self, field: Field) -> bool {
        field == Field::Rational
    }
    /// Integer coordinate vectors by shells of increasing height `max|c_i|`,
    /// each shell in odometer order; stops after `exhaustive_cap` elements.
    fn search(&self, ctx: &mut SearchContext<'_>) -> Result<StrategyOutcome> {
        let endo = ctx.endo;
        let d = endo.dim();
        let f = endo.field();
        let mut budget = ctx.config.exhaustive_cap;
        let mut tried = 0u64;
        for h in 1..=ctx.config.box_height as i64 {
            let mut digits = vec![-h; d];
            loop {
                if digits.iter().any(|x| x.abs() == h) {
                    if budget == 0 {
                        return Ok(StrategyOutcome::Inconclusive(format!(
                            "element cap {} reached at height {h}",
                            ctx.config.exhaustive_cap
                        )));
                    }
                    budget -= 1;
                    tried += 1;
                    let coords: Vector = digits.iter().map(|&x| f.from_i64(x)).collect();
                    if let Some(ev) = try_fitting(endo, &coords)? {
                        return Ok(StrategyOutcome::Split(ev));
                    }
                }
                if !advance(&mut digits, h) {
                    break;
                }
            }
        }
        Ok(StrategyOutcome::Inconclusive(format!(
            "{tried} elements up to height {} are nilpotent or invertible",
            ctx.config.box_height
        )))
    }
}

/// Next vector of `[-h, h]^d` in odometer order; false after the last.
fn advance(digits: &mut [i64], h: i64) -> bool {
    for k in (0..digits.len()).rev() {
        if digits[k] < h {
            digits[k] += 1;
            return true;
        }
        digits[k] = -h;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::certificate::Verdict;
    use crate::algebra::Matrix;

    const Q: Field = Field::Rational;

    fn certify(field: Field, m: usize, action: &[Matrix], config: &SearchConfig) -> Certificate {
        let e = EndoAlgebra::commutant(field, m, action);
        let c = find_splitting_element(&e, config).unwrap();
        c.verify(action).unwrap();
        c
    }

    #[test]
    fn full_matrix_algebra_splits_into_lines() {
        let c = certify(Q, 2, &[Matrix::identity(Q, 2)], &SearchConfig::default());
        assert_eq!(c.verdict, Verdict::Decomposable);
        let s = c.split().unwrap();
        assert_eq!((s.summands[0].len(), s.summands[1].len()), (1, 1));
    }

    #[test]
    fn proof_modes() {
        let scalar = certify(Q, 1, &[Matrix::identity(Q, 1)], &SearchConfig::default());
        assert_eq!(scalar.mode(), "dimension-one");

        let rot = Matrix::from_i64(Q, &[&[0, -1], &[1, 0]]);
        let c = certify(Q, 2, std::slice::from_ref(&rot), &SearchConfig::default());
        assert_eq!((c.verdict, c.mode()), (Verdict::Indecomposable, "field-generated"));

        let gf3 = Field::Prime(3);
        let rot3 = Matrix::from_i64(gf3, &[&[0, -1], &[1, 0]]);
        let c = certify(gf3, 2, std::slice::from_ref(&rot3), &SearchConfig::default());
        assert_eq!(c.mode(), "exhaustive");
        let no_exhaustive = SearchConfig {
            strategies: vec!["scan".into(), "minpoly".into()],
            ..SearchConfig::default()
        };
        assert_eq!(certify(gf3, 2, &[rot3], &no_exhaustive).mode(), "field-generated");

        let jordan = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        let c = certify(Q, 2, std::slice::from_ref(&jordan), &SearchConfig::default());
        assert_eq!((c.verdict, c.mode()), (Verdict::Indecomposable, "primary-generated"));
        let radical_only = SearchConfig {
            strategies: vec!["radical".into()],
            ..SearchConfig::default()
        };
        assert_eq!(certify(Q, 2, &[jordan], &radical_only).mode(), "radical-codimension-one");
    }

    #[test]
    fn primary_components_split() {
        // diag(1, 2) commutes only with diagonals; the identity is skipped by
        // the Fitting scan but diag(1,2)'s own polynomial splits.
        let d = Matrix::from_i64(Q, &[&[1, 0], &[0, 2]]);
        let cfg = SearchConfig {
            strategies: vec!["minpoly".into()],
            ..SearchConfig::default()
        };
        let c = certify(Q, 2, &[d], &cfg);
        assert_eq!(c.mode(), "primary-components");
    }

    #[test]
    fn undecided_echoes_budgets() {
        let cfg = SearchConfig {
            strategies: vec!["dimension-one".into(), "exhaustive".into()],
            exhaustive_cap: 4,
            ..SearchConfig::default()
        };
        let c = certify(Field::Prime(2), 2, &[Matrix::identity(Field::Prime(2), 2)], &cfg);
        assert_eq!(c.verdict, Verdict::Undecided);
        assert_eq!(c.budgets.exhaustive_cap, 4);
        assert_eq!(c.trail.len(), 2);
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["verdict"], "undecided");
        assert_eq!(json["budgets"]["exhaustive_cap"], 4);
    }

    #[test]
    fn box_search_finds_rank_one_element() {
        let cfg = SearchConfig {
            strategies: vec!["box".into()],
            ..SearchConfig::default()
        };
        let c = certify(Q, 2, &[Matrix::identity(Q, 2)], &cfg);
        assert_eq!(c.mode(), "fitting");
        let skip = SearchConfig {
            strategies: vec!["box".into()],
            ..SearchConfig::default()
        };
        let c = certify(Field::Prime(2), 2, &[Matrix::identity(Field::Prime(2), 2)], &skip);
        assert_eq!(c.trail[0].outcome, TrailOutcome::Skipped);
    }

    #[test]
    fn registry_by_name() {
        struct Never;
        impl SplitStrategy for Never {
            fn name(&self) -> &'static str {
                "never"
            }
            fn applies_to(&self, _: Field) -> bool {
                true
            }
            fn search(&self, _: &mut SearchContext<'_>) -> Result<StrategyOutcome> {
                Ok(StrategyOutcome::Inconclusive("by design".into()))
            }
        }
        let mut reg = StrategyRegistry::builtin();
        reg.register(Arc::new(Never)).unwrap();
        assert!(reg.register(Arc::new(Never)).is_err());
        let e = EndoAlgebra::commutant(Q, 2, &[Matrix::identity(Q, 2)]);
        let cfg = SearchConfig {
            strategies: vec!["never".into(), "scan".into()],
            ..SearchConfig::default()
        };
        let c = find_splitting_element_with(&e, &cfg, &reg).unwrap();
        assert_eq!(c.trail[0].detail, "by design");
        assert_eq!(c.verdict, Verdict::Decomposable);
        let bad = SearchConfig {
            strategies: vec!["nope".into()],
            ..SearchConfig::default()
        };
        assert!(find_splitting_element(&e, &bad).is_err());
        assert!(find_splitting_element(&e, &SearchConfig { box_height: 0, ..SearchConfig::default() }).is_err());
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let action = [Matrix::identity(Q, 2)];
        let mut c = certify(Q, 2, &action, &SearchConfig::default());
        if let Evidence::Split(s) = &mut c.evidence {
            s.idempotent = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        }
        assert!(c.verify(&action).is_err());
    }
}
