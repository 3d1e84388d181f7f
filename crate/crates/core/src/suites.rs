//! Verification suites over a corpus. Each suite evaluates one structural
//! statement on every applicable case and records violations with enough
//! data to reproduce them.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use once_cell::sync::OnceCell;
use rayon::prelude::*;

use crate::characteristic::{Analyzer, Limits};
use crate::corpus::{select, selector_label, CorpusEntry};
use crate::engel::{
    bracket_descent, centralizer_intersection_check, engel_identity_index, j_set, Actor, AutomorphismMap,
    EngelChain, InvolutionReport,
};
use crate::error::{Error, Result};
use crate::group::{GroupHandle, DEFAULT_ELEMENT_CAP};
use crate::lattice::DEFAULT_LATTICE_COUNT_CAP;
use crate::report::{
    EngelSummary, GroupSummary, ProfileSummary, ResourceHit, SuiteRecord, Violation, VerdictReport,
};
use crate::subgroup::Subgroup;
use crate::zipper::{all_subgroups, subnormal_overgroup_violations, zipper_case, Branch, LatticeCaps};

/// Groups up to this order are checked for every element; larger ones use
/// conjugacy class representatives.
pub const EXHAUSTIVE_ORDER_CAP: usize = 2_000;
/// Subnormality is compared with an exhaustive chain search up to this order.
pub const CHAIN_SEARCH_MAX_ORDER: usize = 100;
pub const DEFAULT_MAX_ORDER: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    Baer,
    Thm11,
    Thm12,
    Thm13,
    ThmE,
    Cor15,
    ThmJ,
    Cor19,
    Lem31,
    EngineCrosschecks,
    All,
}

impl SuiteId {
    pub const EACH: [SuiteId; 10] = [
        SuiteId::Baer,
        SuiteId::Thm11,
        SuiteId::Thm12,
        SuiteId::Thm13,
        SuiteId::ThmE,
        SuiteId::Cor15,
        SuiteId::ThmJ,
        SuiteId::Cor19,
        SuiteId::Lem31,
        SuiteId::EngineCrosschecks,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Baer => "baer",
            SuiteId::Thm11 => "thm11",
            SuiteId::Thm12 => "thm12",
            SuiteId::Thm13 => "thm13",
            SuiteId::ThmE => "thmE",
            SuiteId::Cor15 => "cor15",
            SuiteId::ThmJ => "thmJ",
            SuiteId::Cor19 => "cor19",
            SuiteId::Lem31 => "lem31",
            SuiteId::EngineCrosschecks => "engine-crosschecks",
            SuiteId::All => "all",
        }
    }

    /// The statement checked, as written into the report.
    pub fn statement(self) -> &'static str {
        match self {
            SuiteId::Baer => "x lies in F(G) iff E_{G,k}(x) = {1} for some k >= 1",
            SuiteId::Thm11 => {
                "F*_h(G)x lies in F(G/F*_h(G)) iff <E_{G,k}(x)> has generalized Fitting height at most h for some k >= 1"
            }
            SuiteId::Thm12 => "x lies in R_h(G) iff <E_{G,k}(x)> has insoluble length at most h for some k >= 1",
            SuiteId::Thm13 => {
                "if A^G = G for a proper subgroup A, then exactly one of: Y_G(A) = G, or A lies in a unique maximal subgroup; \
                 every normal closure descent H_0 = H >= H_1 >= ... is a subnormal chain whose stable term F(A,H) satisfies \
                 <A^F(A,H)> = F(A,H) and contains every L with A <= L <= H and <A^L> = L"
            }
            SuiteId::ThmE => "if [G,a] = G for an automorphism a, then <E_{G,k}(a)> = G for every k >= 1",
            SuiteId::Cor15 => {
                "<E_{G,k}(x)> is subnormal in G for every k; the stable term H of G >= [G,x] >= [G,x,x] >= ... equals the \
                 stable term K of G >= <E_{G,1}(x)> >= <E_{G,2}(x)> >= ...; the minimum over k of h*(<E_{G,k}(x)>) is h*(K), \
                 and likewise for insoluble length"
            }
            SuiteId::ThmJ => {
                "for an involutory automorphism a of G != 1 with [G,a] = G and 2^k the largest 2-part of |g| over g inverted \
                 by a: E_{G,j}(a) = J_G(a) for all j > k, and <J_G(a)> = G; for every involutory a, J_G(a) lies in \
                 E_{G,j}(a) for all j >= 1"
            }
            SuiteId::Cor19 => "for an involutory automorphism a of G != 1 with [G,a] = G: [G:F(G)] < |J_G(a)|!^4",
            SuiteId::Lem31 => {
                "for an involutory automorphism a with [G,a] = G: the intersection of C_G(a)^j over j in J_G(a) is \
                 C_G(<G,a>) = Z(G) ∩ C_G(a)"
            }
            SuiteId::EngineCrosschecks => {
                "independent computations agree: F*(G) via the layer and via the socle; R_{i+1}(G) as the preimage of \
                 R_1(G/R_i(G)); subnormality by normal closure descent and by chain search; structural identities of \
                 F, E, F*, the series and the normal lattice"
            }
            SuiteId::All => "every suite",
        }
    }

    pub fn expand(self) -> Vec<SuiteId> {
        match self {
            SuiteId::All => SuiteId::EACH.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::EACH
            .iter()
            .chain(std::iter::once(&SuiteId::All))
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Deliberate engine faults, used to check that the harness reports them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Membership in `F(G)` is tested against the trivial subgroup.
    TrivialFitting,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: SuiteId,
    pub corpus: String,
    pub max_order: usize,
    pub lattice_max_order: usize,
    /// Engel iterations allowed before a repeat; `None` means `|G|`.
    pub k_cap: Option<usize>,
    pub jobs: usize,
    pub crosschecks: bool,
    pub element_cap: usize,
    pub lattice_count_cap: usize,
    pub exhaustive_order: usize,
    pub timing: bool,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: SuiteId::All,
            corpus: "builtin:small-std".into(),
            max_order: DEFAULT_MAX_ORDER,
            lattice_max_order: crate::zipper::DEFAULT_LATTICE_MAX_ORDER,
            k_cap: None,
            jobs: 1,
            crosschecks: true,
            element_cap: DEFAULT_ELEMENT_CAP,
            lattice_count_cap: DEFAULT_LATTICE_COUNT_CAP,
            exhaustive_order: EXHAUSTIVE_ORDER_CAP,
            timing: false,
            fault: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("max-order", self.max_order),
            ("lattice-max-order", self.lattice_max_order),
            ("jobs", self.jobs),
            ("element cap", self.element_cap),
            ("lattice count cap", self.lattice_count_cap),
        ];
        for (name, v) in caps {
            if v == 0 {
                return Err(Error::OutOfRange(format!("{name} must be positive")));
            }
        }
        if self.k_cap == Some(0) {
            return Err(Error::OutOfRange("k-cap must be positive".into()));
        }
        Ok(())
    }

    fn limits(&self) -> Limits {
        Limits {
            element_cap: self.element_cap,
            lattice_count_cap: self.lattice_count_cap,
            crosscheck: self.crosschecks,
        }
    }
}

/// Loads the configured corpus and runs the configured suites.
pub fn run_suite(config: &SuiteConfig) -> Result<VerdictReport> {
    config.validate()?;
    let entries = select(&config.corpus, config.element_cap)?;
    Ok(run_on(config, &selector_label(&config.corpus), &entries))
}

/// Runs the configured suites on already loaded entries.
pub fn run_on(config: &SuiteConfig, label: &str, entries: &[CorpusEntry]) -> VerdictReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        let analyzer = Analyzer::new(config.limits());
        let contexts: Vec<GroupCtx> = entries
            .iter()
            .map(|e| GroupCtx::new(e, &analyzer, config))
            .collect();
        let mut report = VerdictReport::new(label);
        report.groups = contexts.iter().map(|c| c.summary(false)).collect();
        let mut timing = Vec::new();
        for id in config.suite.expand() {
            let start = Instant::now();
            let mut record = SuiteRecord::new(id.as_str(), id.statement());
            for ctx in &contexts {
                if ctx.skipped {
                    continue;
                }
                if let Err(e) = ctx.base() {
                    record.resource_hits.push(ResourceHit {
                        group: ctx.name().into(),
                        message: e.clone(),
                    });
                    continue;
                }
                run_one(id, ctx, &mut record);
            }
            let skipped = contexts.iter().filter(|c| c.skipped).count();
            if skipped > 0 {
                record.notes.push(format!(
                    "{skipped} group(s) above max order {} left out",
                    config.max_order
                ));
            }
            record.finish();
            report.suites.push(record);
            timing.push((id.as_str().to_string(), start.elapsed().as_millis() as u64));
        }
        if config.timing {
            report.timing_ms = Some(timing);
        }
        report.recompute_status();
        report
    })
}

/// Characteristic profile, series and (optionally) per-class Engel data.
pub fn analyze(config: &SuiteConfig, engel: bool) -> Result<VerdictReport> {
    config.validate()?;
    let entries = select(&config.corpus, config.element_cap)?;
    let analyzer = Analyzer::new(config.limits());
    let mut report = VerdictReport::new(&selector_label(&config.corpus));
    for e in &entries {
        let ctx = GroupCtx::new(e, &analyzer, config);
        report.groups.push(ctx.summary(engel));
    }
    report.recompute_status();
    Ok(report)
}

fn run_one(id: SuiteId, ctx: &GroupCtx, record: &mut SuiteRecord) {
    match id {
        SuiteId::Baer => baer(ctx, record),
        SuiteId::Thm11 => thm11(ctx, record),
        SuiteId::Thm12 => thm12(ctx, record),
        SuiteId::Thm13 => thm13(ctx, record),
        SuiteId::ThmE => thm_e(ctx, record),
        SuiteId::Cor15 => cor15(ctx, record),
        SuiteId::ThmJ => thm_j(ctx, record),
        SuiteId::Cor19 => cor19(ctx, record),
        SuiteId::Lem31 => lem31(ctx, record),
        SuiteId::EngineCrosschecks => crosschecks(ctx, record),
        SuiteId::All => unreachable!("expanded before dispatch"),
    }
}

/// Group-level data shared by all suites.
struct Base {
    fitting: Subgroup,
    gen_fitting_terms: Vec<Subgroup>,
    gen_fitting_height: usize,
    insoluble_length: usize,
    /// Preimage of `F(G/F*_h(G))` for `h = 0..=h*`.
    fitting_above: Vec<Subgroup>,
    /// `R_h(G)` for `h = 0..=λ`.
    radicals: Vec<Subgroup>,
}

struct ElementCase {
    x: u32,
    chain: EngelChain,
    /// `(k, h*, λ)` for every `k ≥ 1` up to the first repeat.
    heights: Vec<(usize, usize, usize)>,
    k_heights: (usize, usize),
}

struct AutoCase {
    name: String,
    alpha: AutomorphismMap,
    /// `[G, α] = G`.
    full: bool,
    involution: Option<InvolutionReport>,
}

struct GroupCtx<'a> {
    entry: &'a CorpusEntry,
    group: GroupHandle,
    analyzer: &'a Analyzer,
    config: &'a SuiteConfig,
    skipped: bool,
    base: OnceCell<std::result::Result<Base, String>>,
    elements: OnceCell<Vec<std::result::Result<Arc<ElementCase>, Error>>>,
    autos: OnceCell<std::result::Result<Vec<AutoCase>, Error>>,
}

fn cycles(g: &GroupHandle, i: u32) -> String {
    g.element(i).to_string()
}

fn error_violation(group: &str, subject: &str, e: &Error) -> Violation {
    Violation {
        group: group.into(),
        subject: subject.into(),
        k: None,
        h: None,
        claim: "engine error".into(),
        lhs: e.to_string(),
        rhs: String::new(),
    }
}

/// Routes an engine error into the record: caps become resource hits,
/// anything else is a violation.
fn record_error(record: &mut SuiteRecord, group: &str, subject: &str, e: &Error) {
    if e.is_resource() {
        record.resource_hits.push(ResourceHit {
            group: group.into(),
            message: format!("{subject}: {e}"),
        });
    } else {
        record.cases += 1;
        record.violations.push(error_violation(group, subject, e));
    }
}

impl<'a> GroupCtx<'a> {
    fn new(entry: &'a CorpusEntry, analyzer: &'a Analyzer, config: &'a SuiteConfig) -> Self {
        GroupCtx {
            entry,
            group: analyzer.intern(&entry.group),
            analyzer,
            config,
            skipped: entry.group.order() > config.max_order,
            base: OnceCell::new(),
            elements: OnceCell::new(),
            autos: OnceCell::new(),
        }
    }

    fn name(&self) -> &str {
        &self.entry.name
    }

    fn exhaustive(&self) -> bool {
        self.group.order() <= self.config.exhaustive_order
    }

    fn k_cap(&self) -> usize {
        self.config.k_cap.unwrap_or(self.group.order().max(1))
    }

    /// Every element, or class representatives above the exhaustive cap.
    fn subjects(&self) -> Vec<u32> {
        if self.exhaustive() {
            (0..self.group.order() as u32).collect()
        } else {
            self.group.conjugacy_classes().representative_indices().to_vec()
        }
    }

    fn sampling_note(&self, record: &mut SuiteRecord) {
        if !self.exhaustive() {
            record.notes.push(format!(
                "{}: order {} above {}, x ranges over {} class representatives",
                self.name(),
                self.group.order(),
                self.config.exhaustive_order,
                self.group.conjugacy_classes().len()
            ));
        }
    }

    fn base(&self) -> std::result::Result<&Base, &String> {
        self.base
            .get_or_init(|| self.compute_base().map_err(|e| e.to_string()))
            .as_ref()
    }

    fn compute_base(&self) -> Result<Base> {
        let a = self.analyzer;
        let g = &self.group;
        let fitting = a.fitting_subgroup(g)?;
        let series = a.gen_fitting_series(g)?;
        let gen_fitting_height = series.length;
        let mut fitting_above = Vec::with_capacity(gen_fitting_height + 1);
        for h in 0..=gen_fitting_height {
            let sub = if h == 0 {
                fitting.clone()
            } else if h == gen_fitting_height {
                g.whole()
            } else {
                let q = a.quotient(&series.terms[h - 1])?;
                let image = a.intern(q.image());
                q.preimage(&a.fitting_subgroup(&image)?)
            };
            fitting_above.push(sub);
        }
        let insoluble_length = a.insoluble_length(g)?;
        let radicals = (0..=insoluble_length)
            .map(|h| a.insoluble_radical(g, h))
            .collect::<Result<Vec<_>>>()?;
        Ok(Base {
            fitting,
            gen_fitting_terms: series.terms,
            gen_fitting_height,
            insoluble_length,
            fitting_above,
            radicals,
        })
    }

    fn heights(&self, sub: &Subgroup) -> Result<(usize, usize)> {
        let s = self.analyzer.standalone(sub);
        Ok((self.analyzer.gen_fitting_height(&s)?, self.analyzer.insoluble_length(&s)?))
    }

    fn element_case(&self, x: u32) -> Result<Arc<ElementCase>> {
        let chain = EngelChain::compute(&self.group, Actor::Element(x), self.k_cap())?;
        let mut heights = Vec::new();
        for k in 1..=chain.len() {
            let (hs, l) = self.heights(chain.generated(k))?;
            heights.push((k, hs, l));
        }
        let k_heights = self.heights(chain.stable_generated())?;
        Ok(Arc::new(ElementCase {
            x,
            chain,
            heights,
            k_heights,
        }))
    }

    fn elements(&self) -> &[std::result::Result<Arc<ElementCase>, Error>] {
        self.elements.get_or_init(|| {
            self.subjects()
                .into_par_iter()
                .map(|x| self.element_case(x))
                .collect()
        })
    }

    fn autos(&self) -> std::result::Result<&Vec<AutoCase>, &Error> {
        self.autos.get_or_init(|| self.compute_autos()).as_ref()
    }

    /// Attached automorphisms plus conjugation by each nontrivial class
    /// representative.
    fn compute_autos(&self) -> Result<Vec<AutoCase>> {
        let g = &self.group;
        let mut list: Vec<(String, AutomorphismMap)> = Vec::new();
        for a in &self.entry.automorphisms {
            // attached maps were built on the entry's handle; rebuild on the interned one
            list.push((a.name.clone(), AutomorphismMap::new(g, a.map.generator_images().to_vec())?));
        }
        for &r in g.conjugacy_classes().representative_indices() {
            if r != 0 {
                list.push((format!("inner {}", cycles(g, r)), AutomorphismMap::inner(g, g.element(r))?));
            }
        }
        list.into_par_iter()
            .map(|(name, alpha)| {
                let descent = bracket_descent(g, &Actor::Automorphism(alpha.clone()));
                let full = descent.terms.len() == 1 && !g.is_trivial();
                let involution = if alpha.is_involution() { Some(j_set(&alpha)?) } else { None };
                Ok(AutoCase {
                    name,
                    alpha,
                    full,
                    involution,
                })
            })
            .collect()
    }

    fn summary(&self, engel: bool) -> GroupSummary {
        let mut s = GroupSummary {
            name: self.entry.name.clone(),
            degree: self.group.degree(),
            order: self.group.order(),
            fingerprint: self.group.fingerprint().to_string(),
            automorphisms: self.entry.automorphisms.iter().map(|a| a.name.clone()).collect(),
            skipped: self.skipped,
            profile: None,
            error: None,
        };
        if self.skipped {
            return s;
        }
        match self.profile_summary(engel) {
            Ok(p) => s.profile = Some(p),
            Err(e) => s.error = Some(e.to_string()),
        }
        s
    }

    fn profile_summary(&self, engel: bool) -> Result<ProfileSummary> {
        let a = self.analyzer;
        let g = &self.group;
        let p = a.profile(g)?;
        let gen_fitting_series = a.gen_fitting_series(g)?.orders();
        let upper_insoluble_series = a.upper_insoluble_series(g, p.insoluble_length)?.orders();
        let mut engel_rows = Vec::new();
        if engel {
            for &r in g.conjugacy_classes().representative_indices() {
                let chain = EngelChain::compute(g, Actor::Element(r), self.k_cap())?;
                engel_rows.push(EngelSummary {
                    x: cycles(g, r),
                    in_fitting: p.fitting.contains_index(r),
                    generated_orders: chain.generated_chain().iter().map(Subgroup::order).collect(),
                    descent_orders: chain.descent().orders(),
                });
            }
        }
        Ok(ProfileSummary {
            fitting: p.fitting.order(),
            layer: p.layer.order(),
            gen_fitting: p.gen_fitting.order(),
            soluble_radical: p.soluble_radical.order(),
            odd_core: p.odd_core.order(),
            fitting_height: p.fitting_height,
            gen_fitting_height: p.gen_fitting_height,
            insoluble_length: p.insoluble_length,
            gen_fitting_series,
            upper_insoluble_series,
            engel: engel_rows,
        })
    }
}

fn baer(ctx: &GroupCtx, record: &mut SuiteRecord) {
    let g = &ctx.group;
    let base = ctx.base().expect("checked by caller");
    let fitting = match ctx.config.fault {
        Some(Fault::TrivialFitting) => g.trivial_subgroup(),
        None => base.fitting.clone(),
    };
    let k_cap = ctx.k_cap();
    let results: Vec<(u32, Result<Option<usize>>)> = (0..g.order() as u32)
        .into_par_iter()
        .map(|x| (x, engel_identity_index(g, &Actor::Element(x), k_cap)))
        .collect();
    for (x, res) in results {
        let subject = cycles(g, x);
        match res {
            Err(e) => record_error(record, ctx.name(), &subject, &e),
            Ok(k) => {
                record.cases += 1;
                let member = fitting.contains_index(x);
                if k.is_some() == member {
                    record.passes += 1;
                } else {
                    record.violations.push(Violation {
                        group: ctx.name().into(),
                        subject,
                        k,
                        h: None,
                        claim: "E_{G,k}(x) = {1} for some k iff x in F(G)".into(),
                        lhs: match k {
                            Some(k) => format!("E_{{G,{k}}}(x) = {{1}}"),
                            None => "E_{G,k}(x) != {1} for all k".into(),
                        },
                        rhs: format!("x in F(G) (order {}): {member}", fitting.order()),
                    });
                }
            }
        }
    }
}

fn min_by<F: Fn(&(usize, usize, usize)) -> usize>(case: &ElementCase, f: F) -> (usize, usize) {
    case.heights
        .iter()
        .map(|t| (f(t), t.0))
        .min()
        .expect("at least one k")
}

fn thm11(ctx: &GroupCtx, record: &mut SuiteRecord) {
    ctx.sampling_note(record);
    let base = ctx.base().expect("checked by caller");
    let g = &ctx.group;
    for res in ctx.elements() {
        let case = match res {
            Ok(c) => c,
            Err(e) => {
                record_error(record, ctx.name(), "element case", e);
                continue;
            }
        };
        let (min, k) = min_by(case, |t| t.1);
        for h in 0..=base.gen_fitting_height {
            record.cases += 1;
            let lhs = base.fitting_above[h].contains_index(case.x);
            let rhs = min <= h;
            if lhs == rhs {
                record.passes += 1;
            } else {
                record.violations.push(Violation {
                    group: ctx.name().into(),
                    subject: cycles(g, case.x),
                    k: Some(k),
                    h: Some(h),
                    claim: "F*_h(G)x in F(G/F*_h(G)) iff min_k h*(<E_{G,k}(x)>) <= h".into(),
                    lhs: format!("F*_h(G)x in F(G/F*_h(G)): {lhs}"),
                    rhs: format!("min_k h*(<E_{{G,k}}(x)>) = {min} at k = {k}"),
                });
            }
        }
    }
}

fn thm12(ctx: &GroupCtx, record: &mut SuiteRecord) {
    ctx.sampling_note(record);
    let base = ctx.base().expect("checked by caller");
    let g = &ctx.group;
    for res in ctx.elements() {
        let case = match res {
            Ok(c) => c,
            Err(e) => {
                record_error(record, ctx.name(), "element case", e);
                continue;
            }
        };
        let (min, k) = min_by(case, |t| t.2);
        for h in 0..=base.insoluble_length {
            record.cases += 1;
            let lhs = base.radicals[h].contains_index(case.x);
            let rhs = min <= h;
            if lhs == rhs {
                record.passes += 1;
            } else {
                record.violations.push(Violation {
                    group: ctx.name().into(),
                    subject: cycles(g, case.x),
                    k: Some(k),
                    h: Some(h),
                    claim: "x in R_h(G) iff min_k lambda(<E_{G,k}(x)>) <= h".into(),
                    lhs: format!("x in R_h(G): {lhs}"),
                    rhs: format!("min_k lambda(<E_{{G,k}}(x)>) = {min} at k = {k}"),
                });
            }
        }
    }
}

fn cor15_case(ctx: &GroupCtx, case: &ElementCase) -> Result<Vec<Violation>> {
    let g = &ctx.group;
    let chain = &case.chain;
    let subject = cycles(g, case.x);
    let mut out = Vec::new();
    let mut push = |k: Option<usize>, claim: &str, lhs: String, rhs: String| {
        out.push(Violation {
            group: ctx.name().into(),
            subject: subject.clone(),
            k,
            h: None,
            claim: claim.into(),
            lhs,
            rhs,
        })
    };
    for k in 0..chain.len() {
        let sub = chain.generated(k);
        if !sub.is_subnormal_in(&g.whole())? {
            push(Some(k), "<E_{G,k}(x)> subnormal in G", format!("order {}", sub.order()), "not subnormal".into());
        }
        if k + 1 < chain.len() && !chain.generated(k + 1).is_subgroup_of(sub) {
            push(Some(k), "<E_{G,k+1}(x)> <= <E_{G,k}(x)>", "not contained".into(), String::new());
        }
        let set = chain.set(k);
        if set.ones().any(|e| !set.contains(chain.actor().act(g, e as u32) as usize)) {
            push(Some(k), "E_{G,k}(x) invariant under conjugation by x", "not invariant".into(), String::new());
        }
    }
    let h = chain.stable_descent();
    let k = chain.stable_generated();
    if !h.same_members(k) {
        push(None, "H = K", format!("|H| = {}", h.order()), format!("|K| = {}", k.order()));
    }
    let (min_h, at_h) = min_by(case, |t| t.1);
    if min_h != case.k_heights.0 {
        push(Some(at_h), "min_k h*(<E_{G,k}(x)>) = h*(K)", min_h.to_string(), case.k_heights.0.to_string());
    }
    let (min_l, at_l) = min_by(case, |t| t.2);
    if min_l != case.k_heights.1 {
        push(Some(at_l), "min_k lambda(<E_{G,k}(x)>) = lambda(K)", min_l.to_string(), case.k_heights.1.to_string());
    }
    Ok(out)
}

fn cor15(ctx: &GroupCtx, record: &mut SuiteRecord) {
    ctx.sampling_note(record);
    let cases: Vec<&Arc<ElementCase>> = ctx.elements().iter().filter_map(|r| r.as_ref().ok()).collect();
    for res in ctx.elements() {
        if let Err(e) = res {
            record_error(record, ctx.name(), "element case", e);
        }
    }
    let results: Vec<Result<Vec<Violation>>> = cases.par_iter().map(|c| cor15_case(ctx, c)).collect();
    for (case, res) in cases.iter().zip(results) {
        match res {
            Ok(v) => {
                record.cases += 1;
                if v.is_empty() {
                    record.passes += 1;
                }
                record.violations.extend(v);
            }
            Err(e) => record_error(record, ctx.name(), &cycles(&ctx.group, case.x), &e),
        }
    }
}

fn thm_e(ctx: &GroupCtx, record: &mut SuiteRecord) {
    let autos = match ctx.autos() {
        Ok(a) => a,
        Err(e) => return record_error(record, ctx.name(), "automorphisms", e),
    };
    let full: Vec<&AutoCase> = autos.iter().filter(|a| a.full).collect();
    let results: Vec<Result<Option<usize>>> = full
        .par_iter()
        .map(|a| {
            let chain = EngelChain::compute(&ctx.group, Actor::Automorphism(a.alpha.clone()), ctx.k_cap())?;
            Ok((1..=chain.len()).find(|&k| !chain.generated(k).is_whole()))
        })
        .collect();
    for (a, res) in full.iter().zip(results) {
        match res {
            Err(e) => record_error(record, ctx.name(), &a.name, &e),
            Ok(bad) => {
                record.cases += 1;
                match bad {
                    None => record.passes += 1,
                    Some(k) => record.violations.push(Violation {
                        group: ctx.name().into(),
                        subject: a.name.clone(),
                        k: Some(k),
                        h: None,
                        claim: "[G,a] = G implies <E_{G,k}(a)> = G".into(),
                        lhs: "[G,a] = G".into(),
                        rhs: format!("<E_{{G,{k}}}(a)> is proper"),
                    }),
                }
            }
        }
    }
}

fn thm_j_case(ctx: &GroupCtx, a: &AutoCase, inv: &InvolutionReport) -> Result<Vec<Violation>> {
    let chain = EngelChain::compute(&ctx.group, Actor::Automorphism(a.alpha.clone()), ctx.k_cap())?;
    let j = inv.j_bits();
    let mut out = Vec::new();
    let mut push = |k: Option<usize>, claim: &str, lhs: String, rhs: String| {
        out.push(Violation {
            group: ctx.name().into(),
            subject: a.name.clone(),
            k,
            h: None,
            claim: claim.into(),
            lhs,
            rhs,
        })
    };
    let last = chain.len() + chain.period() + inv.k() + 1;
    for step in 1..=last {
        if !j.is_subset(chain.set(step)) {
            push(Some(step), "J_G(a) within E_{G,j}(a)", format!("|J| = {}", j.count_ones(..)), format!("|E_{step}| = {}", chain.set(step).count_ones(..)));
        }
    }
    if a.full {
        for step in inv.k() + 1..=last {
            if chain.set(step) != &j {
                push(
                    Some(step),
                    "E_{G,j}(a) = J_G(a) for j > k",
                    format!("|E_{{G,{step}}}(a)| = {}", chain.set(step).count_ones(..)),
                    format!("|J_G(a)| = {}, 2^k = {}", inv.j_len(), inv.two_part),
                );
                break;
            }
        }
        if !inv.generated_j.is_whole() {
            push(None, "<J_G(a)> = G", format!("|<J>| = {}", inv.generated_j.order()), format!("|G| = {}", ctx.group.order()));
        }
    }
    Ok(out)
}

fn involutions<'c>(ctx: &'c GroupCtx<'_>) -> std::result::Result<Vec<(&'c AutoCase, &'c InvolutionReport)>, &'c Error> {
    Ok(ctx
        .autos()?
        .iter()
        .filter_map(|a| a.involution.as_ref().map(|i| (a, i)))
        .collect())
}

fn thm_j(ctx: &GroupCtx, record: &mut SuiteRecord) {
    let cases = match involutions(ctx) {
        Ok(c) => c,
        Err(e) => return record_error(record, ctx.name(), "automorphisms", e),
    };
    let results: Vec<Result<Vec<Violation>>> = cases.par_iter().map(|(a, i)| thm_j_case(ctx, a, i)).collect();
    for ((a, inv), res) in cases.iter().zip(results) {
        match res {
            Err(e) => record_error(record, ctx.name(), &a.name, &e),
            Ok(v) => {
                record.cases += 1;
                if v.is_empty() {
                    record.passes += 1;
                }
                record.violations.extend(v);
                if a.full {
                    record.notes.push(format!(
                        "{} / {}: |J| = {}, 2^k = {}, |C_G(a)| = {}",
                        ctx.name(),
                        a.name,
                        inv.j_len(),
                        inv.two_part,
                        inv.fixed_points.order()
                    ));
                }
            }
        }
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

fn cor19(ctx: &GroupCtx, record: &mut SuiteRecord) {
    let cases = match involutions(ctx) {
        Ok(c) => c,
        Err(e) => return record_error(record, ctx.name(), "automorphisms", e),
    };
    let base = ctx.base().expect("checked by caller");
    let index = ctx.group.order() / base.fitting.order();
    for (a, inv) in cases.into_iter().filter(|(a, _)| a.full) {
        record.cases += 1;
        let lhs = (index as f64).ln();
        let rhs = 4.0 * ln_factorial(inv.j_len());
        if lhs < rhs {
            record.passes += 1;
        } else {
            record.violations.push(Violation {
                group: ctx.name().into(),
                subject: a.name.clone(),
                k: None,
                h: None,
                claim: "ln [G:F(G)] < 4 ln |J_G(a)|!".into(),
                lhs: format!("[G:F(G)] = {index}, ln = {lhs:.6}"),
                rhs: format!("|J| = {}, 4 ln |J|! = {rhs:.6}", inv.j_len()),
            });
        }
    }
}

fn lem31(ctx: &GroupCtx, record: &mut SuiteRecord) {
    let cases = match involutions(ctx) {
        Ok(c) => c,
        Err(e) => return record_error(record, ctx.name(), "automorphisms", e),
    };
    for (a, _) in cases.into_iter().filter(|(a, _)| a.full) {
        match centralizer_intersection_check(&a.alpha) {
            Err(e) => record_error(record, ctx.name(), &a.name, &e),
            Ok(c) => {
                record.cases += 1;
                if c.holds {
                    record.passes += 1;
                } else {
                    record.violations.push(Violation {
                        group: ctx.name().into(),
                        subject: a.name.clone(),
                        k: None,
                        h: None,
                        claim: "intersection of C_G(a)^j over J = Z(G) ∩ C_G(a)".into(),
                        lhs: format!("order {}", c.intersection.order()),
                        rhs: format!("order {}", c.expected.order()),
                    });
                }
            }
        }
    }
}

fn thm13(ctx: &GroupCtx, record: &mut SuiteRecord) {
    let g = &ctx.group;
    if g.order() > ctx.config.lattice_max_order {
        record.notes.push(format!(
            "{}: order {} above lattice max order {}, not checked",
            ctx.name(),
            g.order(),
            ctx.config.lattice_max_order
        ));
        return;
    }
    let caps = LatticeCaps {
        max_order: ctx.config.lattice_max_order,
        ..LatticeCaps::default()
    };
    let lattice = match all_subgroups(g, caps) {
        Ok(l) => l,
        Err(e) => return record_error(record, ctx.name(), "subgroup lattice", &e),
    };
    let proper: Vec<usize> = (0..lattice.len()).filter(|&i| !lattice.get(i).is_whole()).collect();
    type Outcome = Result<(Option<crate::zipper::ZipperCase>, Vec<String>)>;
    let results: Vec<(usize, Outcome)> = proper
        .par_iter()
        .map(|&i| {
            let run = || -> Result<_> {
                let a = lattice.get(i);
                let zc = if a.normal_closure().is_whole() {
                    Some(zipper_case(&lattice, i)?)
                } else {
                    None
                };
                Ok((zc, subnormal_overgroup_violations(&lattice, i)?))
            };
            (i, run())
        })
        .collect();
    let (mut applicable, mut unique_max) = (0usize, 0usize);
    for (i, res) in results {
        let a = lattice.get(i);
        let subject = format!("A = <{}>", a.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "));
        match res {
            Err(e) => record_error(record, ctx.name(), &subject, &e),
            Ok((zc, flavell)) => {
                record.cases += 1;
                let mut bad: Vec<String> = flavell;
                if let Some(z) = zc {
                    applicable += 1;
                    unique_max += z.unique_max_element as usize;
                    if z.both {
                        bad.push("both branches hold".into());
                    }
                    bad.extend(z.violations.iter().cloned());
                    if !bad.is_empty() {
                        let branch = match z.branch {
                            Some(Branch::YEqualsG) => "Y = G",
                            Some(Branch::UniqueMaximal) => "unique maximal",
                            None => "none",
                        };
                        record.violations.push(Violation {
                            group: ctx.name().into(),
                            subject: subject.clone(),
                            k: None,
                            h: None,
                            claim: "dichotomy and descent properties".into(),
                            lhs: format!("branch: {branch}; |Y| = {}; |M(A)| = {}", z.y.order(), z.maximal_over_a.len()),
                            rhs: bad.join("; "),
                        });
                        continue;
                    }
                } else if !bad.is_empty() {
                    record.violations.push(Violation {
                        group: ctx.name().into(),
                        subject,
                        k: None,
                        h: None,
                        claim: "A subnormal in all but one maximal overgroup L gives F(A,L) = A".into(),
                        lhs: String::new(),
                        rhs: bad.join("; "),
                    });
                    continue;
                }
                record.passes += 1;
            }
        }
    }
    record.notes.push(format!(
        "{}: {} subgroups, {} with A^G = G, {} of those with a unique maximal F(A,H) over M(A)",
        ctx.name(),
        lattice.len(),
        applicable,
        unique_max
    ));
}

fn check(record: &mut SuiteRecord, group: &str, claim: &str, ok: bool, lhs: String, rhs: String) {
    record.cases += 1;
    if ok {
        record.passes += 1;
    } else {
        record.violations.push(Violation {
            group: group.into(),
            subject: "G".into(),
            k: None,
            h: None,
            claim: claim.into(),
            lhs,
            rhs,
        });
    }
}

/// `A` subnormal in `B` by searching chains of normal inclusions through
/// the subgroup lattice.
fn subnormal_by_search(normal_in: &[FixedBitSet], members: &[Subgroup], a: usize, b: usize) -> bool {
    let mut seen = FixedBitSet::with_capacity(members.len());
    let mut stack = vec![a];
    seen.insert(a);
    while let Some(n) = stack.pop() {
        if n == b {
            return true;
        }
        for m in normal_in[n].ones() {
            if !seen.contains(m) && members[m].is_subgroup_of(&members[b]) {
                seen.insert(m);
                stack.push(m);
            }
        }
    }
    false
}

fn crosscheck_run(ctx: &GroupCtx, record: &mut SuiteRecord) -> Result<()> {
    let a = ctx.analyzer;
    let g = &ctx.group;
    let name = ctx.name();
    let base = ctx.base().expect("checked by caller");

    let layer_route = a.fitting_subgroup(g)?.join(&a.layer(g)?)?;
    let socle_route = a.generalized_fitting_via_socle(g)?;
    check(record, name, "F* via layer = F* via socle", layer_route.same_members(&socle_route),
        format!("order {}", layer_route.order()), format!("order {}", socle_route.order()));

    for i in 0..base.insoluble_length {
        let ri = &base.radicals[i];
        let next = if ri.is_trivial() {
            a.insoluble_radical(g, 1)?
        } else {
            let q = a.quotient(ri)?;
            let image = a.intern(q.image());
            q.preimage(&a.insoluble_radical(&image, 1)?)
        };
        check(record, name, &format!("R_{} = preimage of R_1(G/R_{i})", i + 1), next.same_members(&base.radicals[i + 1]),
            format!("order {}", next.order()), format!("order {}", base.radicals[i + 1].order()));
    }

    let f = &base.fitting;
    let e = a.layer(g)?;
    let fs = a.generalized_fitting(g)?;
    check(record, name, "F(G) nilpotent", f.is_nilpotent(), String::new(), String::new());
    check(record, name, "E(G) perfect or trivial", e.is_perfect(), format!("order {}", e.order()), String::new());
    check(record, name, "[E(G), F(G)] = 1", e.commutator(f)?.is_trivial(), String::new(), String::new());
    let c = fs.parent().whole().centralizer_of_indices(&fs.indices());
    check(record, name, "C_G(F*(G)) <= F*(G)", c.is_subgroup_of(&fs), format!("order {}", c.order()), format!("order {}", fs.order()));
    check(record, name, "h*(G) = 0 iff G = 1", (base.gen_fitting_height == 0) == g.is_trivial(),
        base.gen_fitting_height.to_string(), g.order().to_string());
    check(record, name, "lambda(G) = 0 iff G soluble", (base.insoluble_length == 0) == g.is_soluble(),
        base.insoluble_length.to_string(), g.is_soluble().to_string());
    if g.is_soluble() {
        let fit = a.fitting_series(g)?;
        let same = fit.terms.len() == base.gen_fitting_terms.len()
            && fit.terms.iter().zip(&base.gen_fitting_terms).all(|(x, y)| x.same_members(y));
        check(record, name, "soluble: F_i(G) = F*_i(G)", same, format!("{:?}", fit.orders()),
            format!("{:?}", base.gen_fitting_terms.iter().map(Subgroup::order).collect::<Vec<_>>()));
    }

    let lattice = a.normal_lattice(g)?;
    for (h, r) in base.radicals.iter().enumerate() {
        let lam = a.insoluble_length(&a.standalone(r))?;
        check(record, name, "lambda(R_h(G)) <= h", lam <= h, lam.to_string(), h.to_string());
        for m in lattice.members() {
            if r.is_subgroup_of(m) && !r.same_members(m) && a.insoluble_length(&a.standalone(m))? <= h {
                check(record, name, "no normal subgroup above R_h(G) has lambda <= h", false,
                    format!("order {}", m.order()), format!("R_{h} order {}", r.order()));
            }
        }
    }
    for m in lattice.members() {
        if m.is_trivial() {
            continue;
        }
        let q = a.quotient(m)?;
        check(record, name, "|G/N| |N| = |G|", q.image().order() * m.order() == g.order(),
            format!("{} * {}", q.image().order(), m.order()), g.order().to_string());
    }

    let known: &[(&str, &str, usize, usize)] = &[
        ("symmetric(4)", "|F(G)|", 4, f.order()),
        ("symmetric(4)", "h*(G)", 3, base.gen_fitting_height),
        ("symmetric(4)", "normal subgroups", 4, lattice.len()),
        ("symmetric(5)", "|F*(G)|", 60, fs.order()),
        ("symmetric(5)", "lambda(G)", 1, base.insoluble_length),
    ];
    for &(group, what, want, got) in known {
        if group == name {
            check(record, name, &format!("known value {what}"), want == got, got.to_string(), want.to_string());
        }
    }

    if g.order() <= CHAIN_SEARCH_MAX_ORDER {
        let all = all_subgroups(g, LatticeCaps { max_order: CHAIN_SEARCH_MAX_ORDER, ..LatticeCaps::default() })?;
        let members = all.members();
        let normal_in: Vec<FixedBitSet> = members
            .par_iter()
            .map(|n| {
                let mut bits = FixedBitSet::with_capacity(members.len());
                for (j, m) in members.iter().enumerate() {
                    if m.order() > n.order() && n.is_normal_in(m) {
                        bits.insert(j);
                    }
                }
                bits
            })
            .collect();
        let mismatches: Vec<Result<Option<(usize, usize)>>> = (0..members.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let normal_in = &normal_in;
                (0..members.len()).filter_map(move |j| {
                    if !members[i].is_subgroup_of(&members[j]) {
                        return None;
                    }
                    Some(members[i].is_subnormal_in(&members[j]).map(|by_descent| {
                        (by_descent != subnormal_by_search(normal_in, members, i, j)).then_some((i, j))
                    }))
                })
            })
            .collect();
        let mut pairs = 0;
        let mut bad = Vec::new();
        for m in mismatches {
            pairs += 1;
            if let Some(p) = m? {
                bad.push(p);
            }
        }
        record.cases += pairs;
        record.passes += pairs - bad.len() as u64;
        for (i, j) in bad {
            record.violations.push(Violation {
                group: name.into(),
                subject: format!("subgroups #{i} <= #{j}"),
                k: None,
                h: None,
                claim: "subnormality by descent = by chain search".into(),
                lhs: members[i].is_subnormal_in(&members[j])?.to_string(),
                rhs: subnormal_by_search(&normal_in, members, i, j).to_string(),
            });
        }
    }
    Ok(())
}

fn crosschecks(ctx: &GroupCtx, record: &mut SuiteRecord) {
    if let Err(e) = crosscheck_run(ctx, record) {
        record_error(record, ctx.name(), "crosschecks", &e);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(suite: SuiteId, corpus: &str) -> SuiteConfig {
        SuiteConfig {
            suite,
            corpus: corpus.into(),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::EACH {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
        }
        assert_eq!("all".parse::<SuiteId>().unwrap().expand().len(), 10);
        assert!("thm99".parse::<SuiteId>().is_err());
    }

    #[test]
    fn baer_on_s3() {
        let r = run_suite(&config(SuiteId::Baer, "builtin:symmetric(3)")).unwrap();
        let s = r.suite("baer").unwrap();
        assert_eq!(s.cases, 6);
        assert_eq!(s.passes, 6);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn injected_fault_is_reported() {
        let mut c = config(SuiteId::Baer, "builtin:symmetric(3)");
        c.fault = Some(Fault::TrivialFitting);
        let r = run_suite(&c).unwrap();
        assert_eq!(r.exit_code(), 1);
        let v = &r.suite("baer").unwrap().violations;
        // the two 3-cycles
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].group, "symmetric(3)");
        assert_eq!(v[0].k, Some(2));
    }

    #[test]
    fn thm_j_records_j_size() {
        let r = run_suite(&config(SuiteId::ThmJ, "builtin:alternating(5)")).unwrap();
        let s = r.suite("thmJ").unwrap();
        assert_eq!(r.exit_code(), 0, "{:?}", s.violations);
        assert!(s.notes.iter().any(|n| n.contains("inner_12: |J| = 7")), "{:?}", s.notes);
    }

    #[test]
    fn all_suites_on_small_groups() {
        let r = run_suite(&config(SuiteId::All, "builtin:symmetric(4);sl2(3);dihedral(5)")).unwrap();
        for s in &r.suites {
            assert!(s.violations.is_empty(), "{}: {:?}", s.suite, s.violations);
            assert!(s.resource_hits.is_empty());
        }
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn rejects_zero_caps() {
        let mut c = config(SuiteId::Baer, "builtin:cyclic(3)");
        c.jobs = 0;
        assert!(run_suite(&c).is_err());
    }

    #[test]
    fn empty_corpus_passes() {
        let dir = tempfile::tempdir().unwrap();
        let r = run_suite(&config(SuiteId::All, dir.path().to_str().unwrap())).unwrap();
        assert_eq!(r.exit_code(), 0);
        assert!(r.suites.iter().all(|s| s.cases == 0));
    }
}
