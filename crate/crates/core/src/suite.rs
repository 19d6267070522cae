//! The verification suites behind the `ctlab` command line, and the `ctlab/1` report.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::amalgam::{build_a_delta, sl2_generators, verify_amalgam_relations, Completion, LDelta, LTau, RelationReport, Sl2, Twist};
use crate::coxeter::coxeter_census;
use crate::endo::{block_recurrence_defects, centralizer_check, compose_endo, det_r, rho_embed, EndoR};
use crate::field::{Field, FieldAut, FqElem};
use crate::form::{mat_vec, random_sl, random_vector, GramForm};
use crate::geometry::{
    build_case1, build_case2, build_rank2_bipartite, default_pairing, find_case1_involution, verify_geometry, GeometryReport, Pg3,
};
use crate::laurent::LaurentPoly;
use crate::matrix::RingMatrix;
use crate::mixed::{MixedCompletion, MixedLayout, MixedParams};
use crate::skew::SkewLaurentPoly;
use crate::specialize::{algebra_span_dim, cyclic_specialize, find_rescale_b, specialize_matrix, CyclicAlgebraRep, SpecPoint};

pub const SCHEMA: &str = "ctlab/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded data that is not a pass/fail claim.
    Finding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub total_ms: u64,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn ok(&self) -> bool {
        self.failures() == 0
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Checks whose name starts with `prefix`.
    pub fn group(&self, prefix: &str) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.name.starts_with(prefix)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!("{} ({} checks, {} failed)\n", self.command, self.checks.len(), self.failures());
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Finding => "note",
            };
            out.push_str(&format!("  {status}  {:width$}  {:>6} ms", c.name, c.elapsed_ms));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  {w}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Collects checks, timing each batch. Elapsed times are reported as 0 unless
/// `timings` is set, so that reports are reproducible byte for byte.
pub struct Runner {
    command: String,
    params: BTreeMap<String, Value>,
    seed: u64,
    timings: bool,
    start: Instant,
    checks: Vec<Check>,
}

type Outcome = (String, Status, Option<String>);

fn pass_if(name: impl Into<String>, ok: bool, witness: Option<String>) -> Outcome {
    (name.into(), if ok { Status::Pass } else { Status::Fail }, witness)
}

fn finding(name: impl Into<String>, witness: String) -> Outcome {
    (name.into(), Status::Finding, Some(witness))
}

impl Runner {
    pub fn new(command: &str, seed: u64, timings: bool) -> Runner {
        Runner { command: command.into(), params: BTreeMap::new(), seed, timings, start: Instant::now(), checks: Vec::new() }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.params.insert(key.into(), v.into());
        self
    }

    fn batch(&mut self, prefix: &str, f: impl FnOnce() -> Vec<Outcome>) {
        let t = Instant::now();
        let outcomes = f();
        let ms = if self.timings { t.elapsed().as_millis() as u64 } else { 0 };
        for (name, status, witness) in outcomes {
            self.checks.push(Check { name: format!("{prefix}/{name}"), status, witness, elapsed_ms: ms });
        }
    }

    fn error(&mut self, prefix: &str, e: crate::Error) {
        self.batch(prefix, || vec![pass_if("setup", false, Some(e.to_string()))]);
    }

    pub fn finish(mut self) -> Report {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        let total_ms = if self.timings { self.start.elapsed().as_millis() as u64 } else { 0 };
        Report { schema: SCHEMA, command: self.command, params: self.params, seed: self.seed, checks: self.checks, total_ms }
    }

    /// Relation suite for `ℒ^τ` over `GF(q)`.
    pub fn amalgam_tau(&mut self, q: u32, n: usize, samples: usize) {
        let prefix = format!("amalgam.ltau.q{q}");
        let seed = self.seed;
        match Field::of_order(q) {
            Ok(f) => self.batch(&prefix, || relation_outcomes(&verify_amalgam_relations(&LTau::new(f, n), samples, seed))),
            Err(e) => self.error(&prefix, e),
        }
    }

    /// Relation suite for `ℒ^δ`, plus `det_R = 1` on every generator image.
    pub fn amalgam_delta(&mut self, q: u32, n: usize, frob: i64, samples: usize) {
        let prefix = format!("amalgam.ldelta.q{q}");
        let seed = self.seed;
        let f = match Field::of_order(q) {
            Ok(f) => f,
            Err(e) => return self.error(&prefix, e),
        };
        let c = LDelta::new(f, n, frob);
        self.batch(&prefix, || {
            let mut out = relation_outcomes(&verify_amalgam_relations(&c, samples, seed));
            let mut bad = None;
            let mut count = 0;
            for k in 1..=n {
                for a in sl2_generators(f) {
                    count += 1;
                    let d = det_r(&c.phi(k, &a));
                    if !matches!(&d, Ok(p) if p.is_one()) && bad.is_none() {
                        bad = Some(format!("k={k} A={a:?} det={d:?}"));
                    }
                }
            }
            out.push(pass_if("det_r_generators", bad.is_none(), bad.or(Some(format!("{count} generators")))));
            out
        });
    }

    /// Relation suite for the mixed completion, plus `φ_{n+1}(A) = φ_1(δ⁻¹(A))` on
    /// random `A`.
    pub fn amalgam_mixed(&mut self, q: u32, n: usize, frob: i64, samples: usize, random_a: usize) {
        let prefix = format!("amalgam.mixed.q{q}");
        let seed = self.seed;
        let params = match Field::of_order(q).and_then(|f| MixedParams::new(f, n, frob)) {
            Ok(p) => p,
            Err(e) => return self.error(&prefix, e),
        };
        let c = match MixedCompletion::new(params, MixedLayout::DeltaOrbit) {
            Ok(c) => c,
            Err(e) => return self.error(&prefix, e),
        };
        self.batch(&prefix, || {
            let mut out = relation_outcomes(&verify_amalgam_relations(&c, samples, seed));
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d69);
            let mut bad = None;
            for _ in 0..random_a {
                let a = random_sl2(c.field(), &mut rng);
                let lhs = c.params.shift(&c.phi(1, &a), n as i64);
                if lhs != c.phi(1, &c.params.delta_inverse(&a)) && bad.is_none() {
                    bad = Some(format!("A={a:?}"));
                }
            }
            out.push(pass_if("closing_twist_random", bad.is_none(), bad.or(Some(format!("{random_a} samples")))));
            out
        });
        if let Ok(printed) = MixedCompletion::new(c.params.clone(), MixedLayout::AsPrinted) {
            self.batch(&prefix, || {
                let r = verify_amalgam_relations(&printed, 1, seed);
                let broken = r.check("closing_twist").is_some_and(|c| !c.ok());
                vec![finding("printed_layout_closing_twist", format!("fails: {broken}"))]
            });
        }
    }

    /// Edge maps of the abstract amalgam `𝒜^δ`.
    pub fn amalgam_abstract(&mut self, q: u32, n: usize, frob: u32, tau: bool) {
        let prefix = format!("amalgam.abstract.q{q}");
        match build_a_delta(n, q, Twist { frobenius_power: frob, tau }) {
            Ok(am) => self.batch(&prefix, || {
                let mut out = vec![pass_if("edges", am.edges.len() == n * (n - 1) / 2, Some(format!("{} edges", am.edges.len())))];
                if !am.warnings.is_empty() {
                    out.push(finding("warnings", am.warnings.join("; ")));
                }
                out
            }),
            Err(e) => self.error(&prefix, e),
        }
    }

    /// `det_R` suite over `GF(q)` with `δ` of order `s`.
    pub fn detr(&mut self, q: u32, s: usize, n: usize, samples: usize) {
        let prefix = format!("detr.q{q}");
        let seed = self.seed;
        let f = match Field::of_order(q) {
            Ok(f) => f,
            Err(e) => return self.error(&prefix, e),
        };
        if s == 0 || f.degree() as usize % s != 0 {
            return self.error(&prefix, crate::Error::InvalidParameters(format!("no automorphism of GF({q}) has order {s}")));
        }
        let delta = FieldAut::new(f, (f.degree() as usize / s) as i64);
        self.batch(&prefix, || detr_outcomes(delta, n, s, samples, seed));
    }

    /// The form `β` and its adjoint `θ` on `A^{2n}`.
    pub fn form(&mut self, q: u32, n: usize, scale: usize) {
        let prefix = format!("form.q{q}");
        let seed = self.seed;
        match Field::of_order(q) {
            Ok(f) => self.batch(&prefix, || form_outcomes(f, n, scale, seed)),
            Err(e) => self.error(&prefix, e),
        }
    }

    /// Specialization of the `ℒ^τ` generators at `a`, where `at` is `-1`, `1` or `zeta`.
    pub fn specialize(&mut self, q: u32, n: usize, at: &str) {
        let prefix = format!("specialize.q{q}.{at}");
        let f = match Field::of_order(q) {
            Ok(f) => f,
            Err(e) => return self.error(&prefix, e),
        };
        self.batch(&prefix, || specialize_outcomes(f, n, at));
    }

    /// Cyclic algebra `(k/k^δ, δ, a)` relations and multiplicativity of the skew
    /// specialization.
    pub fn cyclic(&mut self, q: u32, samples: usize) {
        let prefix = format!("specialize.cyclic.q{q}");
        let seed = self.seed;
        match Field::of_order(q) {
            Ok(f) if f.degree() > 1 => self.batch(&prefix, || cyclic_outcomes(FieldAut::new(f, 1), samples, seed)),
            Ok(_) => self.error(&prefix, crate::Error::InvalidParameters(format!("GF({q}) has no nontrivial automorphism"))),
            Err(e) => self.error(&prefix, e),
        }
    }

    pub fn coxeter(&mut self, m: usize, shift: usize, max_len: usize, coset_samples: usize) {
        let prefix = format!("coxeter.m{m}");
        let seed = self.seed;
        match coxeter_census(m, shift, max_len, coset_samples, seed) {
            Ok(c) => self.batch(&prefix, || {
                vec![
                    pass_if("ball_length_formula", c.length_formula_mismatches == 0, Some(format!("ball size {}", c.ball_size))),
                    pass_if("twisted_set_equality", c.set_equality, Some(format!("by length {:?}", c.twisted_by_length))),
                    pass_if("twisted_even_length", c.odd_length_twisted == 0, None),
                    pass_if(
                        "length_law",
                        c.law_other == 0,
                        Some(format!("+2: {}, -2: {}, other: {}", c.law_plus_two, c.law_minus_two, c.law_other)),
                    ),
                    pass_if(
                        "twisted_decompose",
                        c.decompose_failures == 0,
                        Some(format!("{} decompositions, {} failures", c.decompositions, c.decompose_failures)),
                    ),
                    finding("twisted_decompose_terminal_cases", c.terminal_cases.to_string()),
                    pass_if("exchange_condition", c.exchange_failures == 0, None),
                    pass_if("theta_on_words", c.theta_word_mismatches == 0, None),
                    pass_if(
                        "min_double_coset",
                        c.coset_mismatches == 0 && c.coset_not_unique == 0,
                        Some(format!("{} instances", c.coset_instances)),
                    ),
                ]
            }),
            Err(e) => self.error(&prefix, e),
        }
    }

    /// `case` is `"1"`, `"2"` or `"rank2"`.
    pub fn geometry(&mut self, q: u32, case: &str, samples: usize) {
        let prefix = if case == "rank2" { format!("geometry.q{q}.rank2") } else { format!("geometry.q{q}.case{case}") };
        let seed = self.seed;
        if case == "rank2" {
            let g = build_rank2_bipartite(q);
            return self.batch(&prefix, || {
                vec![
                    pass_if("connected", g.is_connected() == (q >= 2), Some(format!("{} edges", g.edges.len()))),
                    pass_if("regular", g.degrees().iter().all(|&d| d == q as usize), None),
                ]
            });
        }
        let pg = match Pg3::new(q) {
            Ok(pg) => pg,
            Err(e) => return self.error(&prefix, e),
        };
        let built = match case {
            "1" => find_case1_involution(&pg).and_then(|phi| build_case1(pg, &phi)),
            "2" => build_case2(pg.clone(), &default_pairing(&pg)),
            other => Err(crate::Error::InvalidParameters(format!("unknown case {other}"))),
        };
        match built {
            Ok(g) => self.batch(&prefix, || geometry_outcomes(&verify_geometry(&g, samples, seed))),
            Err(e) => self.error(&prefix, e),
        }
    }

    /// The acceptance configuration.
    pub fn all(&mut self, q: u32, n: usize, samples: usize) {
        self.amalgam_abstract(q, n, 0, true);
        self.amalgam_tau(q, n, samples);
        self.amalgam_delta(4, n, 1, samples);
        self.amalgam_mixed(4, n, 1, samples, 50);
        self.detr(4, 2, n, 100);
        self.form(q, n, 100);
        for at in ["-1", "1", "zeta"] {
            self.specialize(q, n, at);
        }
        self.cyclic(4, 50);
        self.coxeter(8, 4, 8, 200);
        for case in ["1", "2", "rank2"] {
            self.geometry(q, case, 1000.max(samples));
        }
    }
}

fn relation_outcomes(r: &RelationReport) -> Vec<Outcome> {
    r.checks
        .iter()
        .map(|c| {
            let w = c.witness.clone().or(Some(format!("{} cases", c.passed)));
            pass_if(c.name.clone(), c.ok(), w)
        })
        .collect()
}

pub fn random_sl2<R: Rng>(f: &'static Field, rng: &mut R) -> Sl2 {
    loop {
        let a = f.elem(rng.gen_range(1..f.order()));
        let (b, c) = (f.elem(rng.gen_range(0..f.order())), f.elem(rng.gen_range(0..f.order())));
        let d = (f.one() + b * c) * a.inv().unwrap();
        if let Some(m) = Sl2::new(a, b, c, d) {
            return m;
        }
    }
}

fn random_skew<R: Rng>(delta: FieldAut, rng: &mut R) -> SkewLaurentPoly {
    let f = delta.field();
    let c: Vec<FqElem> = (0..rng.gen_range(1..=2)).map(|_| f.elem(rng.gen_range(0..f.order()))).collect();
    SkewLaurentPoly::new(delta, rng.gen_range(-1..=1), &c)
}

fn random_endo<R: Rng>(delta: FieldAut, n: usize, rng: &mut R) -> EndoR {
    EndoR::from_fn(n, |_, _| random_skew(delta, rng))
}

/// A generator of `GL_R(M)`: an elementary transvection, a diagonal unit, or a swap.
fn random_gl_generator<R: Rng>(delta: FieldAut, n: usize, rng: &mut R) -> EndoR {
    let f = delta.field();
    let (z, o) = (SkewLaurentPoly::zero(delta), SkewLaurentPoly::one(delta));
    let i = rng.gen_range(0..n);
    let j = (i + rng.gen_range(1..n)) % n;
    match rng.gen_range(0..3) {
        0 => {
            let x = random_skew(delta, rng);
            EndoR::from_fn(n, |a, b| if a == b { o.clone() } else if (a, b) == (i, j) { x.clone() } else { z.clone() })
        }
        1 => {
            let u = SkewLaurentPoly::monomial(delta, f.elem(rng.gen_range(1..f.order())), rng.gen_range(-2..=2));
            EndoR::from_fn(n, |a, b| if a == b && a == i { u.clone() } else if a == b { o.clone() } else { z.clone() })
        }
        _ => EndoR::from_fn(n, |a, b| {
            let pa = if a == i { j } else if a == j { i } else { a };
            if pa == b {
                o.clone()
            } else {
                z.clone()
            }
        }),
    }
}

fn detr_outcomes(delta: FieldAut, n: usize, s: usize, samples: usize, seed: u64) -> Vec<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6465);
    let (mut functor, mut central, mut recurrence, mut mult) = (None, None, None, None);
    for idx in 0..samples {
        let (g, h) = (random_endo(delta, n, &mut rng), random_endo(delta, n, &mut rng));
        let gh = compose_endo(&g, &h).expect("same δ");
        let (rg, rh, rgh) = (rho_embed(&g, n, s).unwrap(), rho_embed(&h, n, s).unwrap(), rho_embed(&gh, n, s).unwrap());
        if rgh != rg.mul(&rh) && functor.is_none() {
            functor = Some(format!("pair {idx}"));
        }
        for (name, r) in [("g", &rg), ("h", &rh), ("gh", &rgh)] {
            if !centralizer_check(r, &delta, n, s) && central.is_none() {
                central = Some(format!("pair {idx}, {name}"));
            }
            if !block_recurrence_defects(r, &delta, n, s).is_empty() && recurrence.is_none() {
                recurrence = Some(format!("pair {idx}, {name}"));
            }
        }
        if rgh.det() != &rg.det() * &rh.det() && mult.is_none() {
            mult = Some(format!("pair {idx}"));
        }
    }
    let fixed = delta.fixed_field();
    let mut image = None;
    for idx in 0..200 {
        let len = rng.gen_range(1..=6);
        let mut w = EndoR::identity(n, delta);
        for _ in 0..len {
            w = compose_endo(&w, &random_gl_generator(delta, n, &mut rng)).unwrap();
        }
        let d = det_r(&w).unwrap();
        let ok = d.as_monomial().is_some_and(|(c, _)| fixed.contains(&c));
        if !ok && image.is_none() {
            image = Some(format!("word {idx}: det = {d}"));
        }
    }
    let cases = Some(format!("{samples} pairs"));
    vec![
        pass_if("rho_functorial", functor.is_none(), functor.or(cases.clone())),
        pass_if("centralizer_identity", central.is_none(), central.or(cases.clone())),
        pass_if("block_recurrence", recurrence.is_none(), recurrence.or(cases.clone())),
        pass_if("det_multiplicative", mult.is_none(), mult.or(cases)),
        pass_if("det_image_of_words", image.is_none(), image.or(Some("200 words".into()))),
    ]
}

/// `scale` sets the sample counts: `5·scale` θθ checks, `2·scale` adjoint triples and
/// `scale` symmetry pairs.
fn form_outcomes(f: &'static Field, n: usize, scale: usize, seed: u64) -> Vec<Outcome> {
    let form = GramForm::new(f, n);
    let d = form.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x666f);
    let id = RingMatrix::identity(d, &LaurentPoly::one(f));
    let (mut inv, mut invol, mut adjoint, mut sym) = (None, None, None, None);
    for idx in 0..5 * scale {
        let (g, gi) = random_sl(f, d, 6, 1, &mut rng);
        if g.mul(&gi) != id && inv.is_none() {
            inv = Some(format!("sample {idx}"));
        }
        let th = form.theta_with_inverse(&gi);
        let th_inv = form.theta_with_inverse(&g);
        if form.theta_with_inverse(&th_inv) != g && invol.is_none() {
            invol = Some(format!("sample {idx}"));
        }
        if idx < 2 * scale {
            let (u, v) = (random_vector(f, d, 1, &mut rng), random_vector(f, d, 1, &mut rng));
            if form.beta(&mat_vec(&g, &u), &mat_vec(&th, &v)).unwrap() != form.beta(&u, &v).unwrap() && adjoint.is_none() {
                adjoint = Some(format!("triple {idx}"));
            }
        }
    }
    let t = LaurentPoly::t(f);
    for idx in 0..scale {
        let (u, v) = (random_vector(f, d, 2, &mut rng), random_vector(f, d, 2, &mut rng));
        if form.beta(&v, &u).unwrap() != &t * &form.beta(&u, &v).unwrap().sigma() && sym.is_none() {
            sym = Some(format!("pair {idx}"));
        }
    }
    let dual = form.right_dual_basis(&id).unwrap();
    let want = RingMatrix::from_fn(d, d, |i, j| {
        if i == j + n {
            LaurentPoly::one(f)
        } else if j == i + n {
            t.clone()
        } else {
            LaurentPoly::zero(f)
        }
    });
    vec![
        pass_if("gram_identity", form.gram_identity_holds(), None),
        pass_if("random_inverse", inv.is_none(), inv.or(Some(format!("{} samples", 5 * scale)))),
        pass_if("theta_involution", invol.is_none(), invol.or(Some(format!("{} samples", 5 * scale)))),
        pass_if("theta_adjoint", adjoint.is_none(), adjoint.or(Some(format!("{} triples", 2 * scale)))),
        pass_if("beta_symmetry", sym.is_none(), sym.or(Some(format!("{scale} pairs")))),
        pass_if("right_dual_basis", dual == want, None),
    ]
}

fn specialize_outcomes(f: &'static Field, n: usize, at: &str) -> Vec<Outcome> {
    let pt = match at {
        "-1" => SpecPoint::minus_one(f),
        "1" => SpecPoint::one(f),
        "zeta" => SpecPoint::zeta(f),
        other => return vec![pass_if("setup", false, Some(format!("unknown point {other}")))],
    };
    let l = LTau::new(f, n);
    let gens: Vec<_> = (1..=n)
        .flat_map(|k| sl2_generators(f).into_iter().map(move |a| (k, a)))
        .map(|(k, a)| (k, specialize_matrix(&l.phi(k, &a), &pt).expect("a ≠ 0")))
        .collect();
    let mut out = Vec::new();
    let bad = gens.iter().find(|(_, g)| pt.preserves_form(g) != Some(true)).map(|(k, _)| format!("φ_{k}"));
    out.push(pass_if("preserves_gram", bad.is_none(), bad.or(Some(format!("{} generators", gens.len())))));
    if at == "zeta" {
        match find_rescale_b(pt.a, f.order(), n) {
            Ok(r) => {
                let s = pt.conj.expect("ζ has a conjugation");
                let g = &r.gram;
                let hermitian = g.transpose().map(|&x| s.apply(x)) == *g;
                out.push(pass_if("rescaled_gram_hermitian", hermitian, Some(format!("b = {}, κ = {}", r.b, r.kappa))));
                let dinv = r.d.inverse().expect("D is diagonal with unit entries");
                let bad = gens.iter().find(|(_, x)| {
                    let h = dinv.mul(x).mul(&r.d);
                    h.transpose().mul(g).mul(&h.map(|&y| s.apply(y))) != *g
                });
                out.push(pass_if("preserves_hermitian", bad.is_none(), bad.map(|(k, _)| format!("φ_{k}"))));
            }
            Err(e) => out.push(pass_if("rescaled_gram_hermitian", false, Some(e.to_string()))),
        }
    }
    if at == "-1" {
        let mats: Vec<_> = gens.into_iter().map(|(_, g)| g).collect();
        let full = 4 * n * n;
        let reached = (1..=8).find(|&r| algebra_span_dim(&mats, r) == full);
        let w = match reached {
            Some(r) => format!("dimension {full} at radius {r}"),
            None => format!("dimension {} at radius 8", algebra_span_dim(&mats, 8)),
        };
        out.push(pass_if("span_dimension", reached.is_some(), Some(w)));
    }
    out
}

fn cyclic_outcomes(delta: FieldAut, samples: usize, seed: u64) -> Vec<Outcome> {
    let f = delta.field();
    let n = delta.order() as usize;
    let mut out = Vec::new();
    let (mut power, mut twist) = (None, None);
    for a in delta.fixed_field().into_iter().filter(|a| !a.is_zero()) {
        let rep = CyclicAlgebraRep::new(delta, a).expect("a ∈ k^δ");
        if rep.u_pow(n as i64) != RingMatrix::identity(n, &a) && power.is_none() {
            power = Some(format!("a = {a}"));
        }
        for x in f.elements() {
            if rep.lambda(x).mul(rep.lambda_u()) != rep.lambda_u().mul(&rep.lambda(delta.apply(x))) && twist.is_none() {
                twist = Some(format!("a = {a}, x = {x}"));
            }
        }
    }
    out.push(pass_if("u_power", power.is_none(), power));
    out.push(pass_if("u_twists", twist.is_none(), twist));
    let rep = CyclicAlgebraRep::new(delta, f.one()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6379);
    let mut bad = None;
    for idx in 0..samples {
        let (g, h) = (random_endo(delta, 2, &mut rng), random_endo(delta, 2, &mut rng));
        let lhs = cyclic_specialize(&compose_endo(&g, &h).unwrap(), &rep).unwrap();
        let rhs = cyclic_specialize(&g, &rep).unwrap().mul(&cyclic_specialize(&h, &rep).unwrap());
        if lhs != rhs && bad.is_none() {
            bad = Some(format!("pair {idx}"));
        }
    }
    out.push(pass_if("specialize_multiplicative", bad.is_none(), bad.or(Some(format!("{samples} pairs")))));
    out
}

fn geometry_outcomes(r: &GeometryReport) -> Vec<Outcome> {
    let (pp, pl, ll) = (r.moves_point_plane_point, r.moves_point_plane_line, r.moves_line_plane_line);
    vec![
        finding("counts", format!("{} points, {} lines, {} planes", r.points, r.lines, r.planes)),
        pass_if("diameter_two", r.diameter == Some(2), Some(format!("diameter {:?}", r.diameter))),
        pass_if("line_plane_incidence", r.line_plane_defects == 0, None),
        pass_if("point_line_collinearity", r.point_line_defects == 0, None),
        pass_if(
            "triangles",
            r.triangle_undecomposable == 0 && r.triangle_construction_failures == 0,
            Some(match r.triangle_witness {
                Some(t) => format!(
                    "{} undecomposable of {} non-geometric, e.g. {t:?}",
                    r.triangle_undecomposable, r.triangles_nongeometric
                ),
                None => format!("{} triangles, {} non-geometric", r.triangles, r.triangles_nongeometric),
            }),
        ),
        pass_if("quadrangles", r.quadrangle_failures == 0, Some(format!("{} sampled", r.quadrangles))),
        pass_if("pentagons", r.pentagon_failures == 0, Some(format!("{} sampled", r.pentagons))),
        pass_if("move_point_plane_point", pp.1 == 0, Some(format!("{} configurations", pp.0))),
        pass_if("move_point_plane_line", pl.1 == 0, Some(format!("{} configurations", pl.0))),
        pass_if("move_line_plane_line", ll.1 == 0, Some(format!("{} configurations", ll.0))),
    ]
}

/// Run the full acceptance configuration.
pub fn run_all(q: u32, n: usize, seed: u64, samples: usize, timings: bool) -> Report {
    let mut r = Runner::new("all", seed, timings);
    r.param("q", q).param("n", n).param("samples", samples);
    r.all(q, n, samples);
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_is_sorted_and_versioned() {
        let mut r = Runner::new("form", 3, false);
        r.param("q", 5);
        r.form(5, 2, 4);
        r.geometry(3, "rank2", 10);
        let rep = r.finish();
        assert!(rep.ok());
        let names: Vec<_> = rep.checks.iter().map(|c| c.name.clone()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        let v: Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["schema"], "ctlab/1");
        assert_eq!(v["checks"][0]["elapsed_ms"], 0);
    }

    #[test]
    fn setup_errors_become_failures() {
        let mut r = Runner::new("geometry", 0, false);
        r.geometry(4, "1", 10);
        r.detr(5, 2, 3, 1);
        let rep = r.finish();
        assert_eq!(rep.failures(), 2);
        assert!(rep.check("geometry.q4.case1/setup").unwrap().witness.as_ref().unwrap().contains("even"));
    }
}
