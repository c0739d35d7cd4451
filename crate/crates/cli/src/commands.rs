use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};
use vertexlie::formal_calc::{
    decompose, delta_window, oracle_radius, power_diff_coeff, BiSeriesWindow, DeltaSeries, LaurentPoly, Side, Window,
};
use vertexlie::lattice::{bk_compare, build_pl_algebra, detect_indefinite, Cocycle, Definiteness, EvenLattice};
use vertexlie::lie_core::presets;
use vertexlie::poisson::{p2_structure_of, verify_p2_iso, P2Samples, PoissonPresentation, VPDiffAlgebra};
use vertexlie::report::CheckReport;
use vertexlie::vacuum::VacuumModule;
use vertexlie::vertex_lie::{builders, ModeElement, VLStructure};
use vertexlie::Rational;

use crate::config::{parse_gram, parse_lambda, RunConfig};
use crate::error::CliError;
use crate::output::Outcome;
use crate::{Cli, Command, LatticeAction, Suite};

const DEFAULT_BUILDER: &str = "virasoro";
const DEFAULT_GRAM: &str = "[[2,-1],[-1,2]]";
const MONOMIAL_ORDER: &str = "PBW: mode index ascending, then generator index";
const COCYCLE_RULE: &str = "bimultiplicative, e_i before e_j picks up (-1)^<e_i,e_j> for i > j";

type Lambda = BTreeMap<String, Rational>;

/// Resolved parameters: flags take precedence over the config file.
pub struct Ctx {
    pub seed: u64,
    builder: Option<String>,
    cfg: RunConfig,
    window: Option<u32>,
    depth: Option<u32>,
    lambda: Option<Lambda>,
    gram: Option<Vec<Vec<i64>>>,
}

impl Ctx {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let cfg = match &cli.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if cfg.builder.is_some() && cfg.structure.is_some() {
            return Err(CliError::Usage("config sets both `builder` and `structure`".into()));
        }
        let gram = match &cli.gram {
            Some(g) => Some(parse_gram(g)?),
            None => cfg.gram.clone(),
        };
        Ok(Ctx {
            seed: cli.seed.or(cfg.seed).unwrap_or(0),
            builder: cli.builder.clone(),
            window: cli.window.or(cfg.window),
            depth: cli.depth.or(cfg.depth),
            lambda: parse_lambda(&cli.lambda)?.or_else(|| cfg.lambda.clone()),
            gram,
            cfg,
        })
    }

    pub fn run(&self, cmd: &Command) -> Result<Outcome, CliError> {
        match cmd {
            Command::Check { suite } => self.check(*suite),
            Command::Bracket { a, m, b, n } => self.bracket(a, *m, b, *n),
            Command::Character => self.character(),
            Command::Act { word } => self.act(word),
            Command::BorcherdsCheck { a, b } => self.borcherds(a.as_deref(), b.as_deref()),
            Command::P2 { eliminate } => self.p2(*eliminate),
            Command::VpCheck { preset } => self.vp_check(preset.as_deref()),
            Command::Pvpa { preset } => self.pvpa(preset.as_deref()),
            Command::Lattice { action, k } => self.lattice(*action, *k),
            Command::Decompose { input, order } => self.decompose(input, *order),
        }
    }

    fn window_or(&self, default: u32) -> i64 {
        self.window.unwrap_or(default) as i64
    }

    fn depth_or(&self, default: u32) -> i64 {
        self.depth.unwrap_or(default) as i64
    }

    fn has_source(&self) -> bool {
        self.builder.is_some() || self.cfg.builder.is_some() || self.cfg.structure.is_some()
    }

    /// The structure and a label for its source. Inline tables are certified
    /// at the run window unless `certify` is false.
    fn structure(&self, certify: bool) -> Result<(VLStructure, String), CliError> {
        if let Some(name) = &self.builder {
            return Ok((builders::by_name(name)?, name.clone()));
        }
        if let Some(table) = &self.cfg.structure {
            let s = if certify { table.build(self.window_or(4))? } else { table.build_uncertified()? };
            return Ok((s, "inline".into()));
        }
        let name = self.cfg.builder.as_deref().unwrap_or(DEFAULT_BUILDER);
        Ok((builders::by_name(name)?, name.to_string()))
    }

    /// Without any structure source the default Virasoro module uses `c = 1/2`.
    fn lambda(&self) -> Option<Lambda> {
        match (&self.lambda, self.has_source()) {
            (Some(l), _) => Some(l.clone()),
            (None, false) => Some([("c".to_string(), Rational::new(1, 2))].into_iter().collect()),
            (None, true) => None,
        }
    }

    fn module(&self) -> Result<(VacuumModule, String), CliError> {
        let (s, src) = self.structure(true)?;
        let lam = self.lambda();
        Ok((VacuumModule::new(s, lam.as_ref())?, src))
    }

    fn lattice_input(&self) -> Result<EvenLattice, CliError> {
        let gram = match &self.gram {
            Some(g) => g.clone(),
            None => parse_gram(DEFAULT_GRAM)?,
        };
        Ok(EvenLattice::new(gram)?)
    }

    // ---- check ----

    fn check(&self, suite: Suite) -> Result<Outcome, CliError> {
        let suites = match suite {
            Suite::All => vec![Suite::Delta, Suite::Vla, Suite::Vacuum, Suite::P2, Suite::Lattice],
            s => vec![s],
        };
        let mut out = Outcome::default();
        let mut results = serde_json::Map::new();
        let mut text = Vec::new();
        for s in suites {
            let (name, part) = match s {
                Suite::Delta => ("delta", self.suite_delta()),
                Suite::Vla => ("vla", self.suite_vla()?),
                Suite::Vacuum => ("vacuum", self.suite_vacuum()?),
                Suite::P2 => ("p2", self.suite_p2()?),
                Suite::Lattice => ("lattice", self.suite_lattice()?),
                Suite::All => unreachable!("expanded above"),
            };
            if !part.text.is_empty() {
                text.push(part.text);
            }
            results.insert(name.into(), part.result);
            out.checks.extend(part.checks);
            for (k, v) in part.choices {
                if !out.choices.iter().any(|(k2, _)| *k2 == k) {
                    out.choices.push((k, v));
                }
            }
        }
        out.text = text.join("\n");
        out.result = Value::Object(results);
        Ok(out)
    }

    fn suite_delta(&self) -> Outcome {
        let base = Window::radius(14);
        let mut closed = CheckReport::new("power of (x-y) times delta derivative");
        for m in 0..=8u32 {
            for n in 0..=8u32 {
                let oracle = delta_window(n, base).mul_power_diff(m);
                let w = oracle.window();
                let got = DeltaSeries::delta(n).mul_power_diff(m).render(w);
                let expected = if m > n {
                    BiSeriesWindow::zeros(w)
                } else {
                    let c = power_diff_coeff(m, n);
                    let d = delta_window(n - m, w);
                    BiSeriesWindow::from_fn(w, |a, b| &c * &d.get(a, b))
                };
                closed.check(got.first_difference(&oracle).is_none(), || format!("m={m} n={n}: symbolic product"));
                closed.check(expected.first_difference(&oracle).is_none(), || format!("m={m} n={n}: closed form"));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut round = CheckReport::new("decompose round trip");
        for i in 0..100 {
            let s = random_series(&mut rng);
            let w = Window::radius(oracle_radius(&s));
            let res = decompose(&s.render(w), s.max_order().unwrap_or(0), w);
            match res {
                Ok(d) => round.check(d.canonical() == s.canonical(), || format!("sample {i}: {s} came back as {d}")),
                Err(e) => round.check(false, || format!("sample {i}: {e}")),
            }
        }
        Outcome::new("", json!({ "samples": 100 })).check(closed).check(round)
    }

    fn suite_vla(&self) -> Result<Outcome, CliError> {
        let (s, src) = self.structure(false)?;
        let w = self.window_or(4);
        let rep = s.verify_all(w);
        Ok(Outcome::new("", json!({ "structure": src, "window": w, "dim": s.dim() }))
            .check(rep)
            .choice("structure", src))
    }

    fn suite_vacuum(&self) -> Result<Outcome, CliError> {
        let (v, src) = self.module()?;
        let depth = self.depth_or(6);
        let dims = v.character(depth)?;
        let mut ch = CheckReport::new("character against the PBW product formula");
        match product_character(v.structure(), depth) {
            Some(expected) => {
                ch.check(dims == expected, || format!("got {dims:?}, product formula gives {expected:?}"))
            }
            None => ch.fail("a non-central generator has nonpositive degree"),
        }
        let fields = noncentral_fields(v.structure());
        let w = self.window_or(2);
        let bdepth = depth.min(4);
        let mut borch = CheckReport::new("borcherds commutator");
        for a in &fields {
            for b in &fields {
                let sa = v.field_state(a)?;
                let sb = v.field_state(b)?;
                borch.merge(v.borcherds_check(&sa, &sb, w, bdepth)?);
            }
        }
        Ok(Outcome::new(
            "",
            json!({ "structure": src, "character": dims, "borcherds_window": w, "borcherds_depth": bdepth }),
        )
        .check(ch)
        .check(borch)
        .choice("monomial_order", MONOMIAL_ORDER))
    }

    fn suite_p2(&self) -> Result<Outcome, CliError> {
        let (v, src) = self.module()?;
        let pres = p2_structure_of(&v)?;
        let samples = P2Samples { seed: self.seed, count: 50, max_degree: self.depth_or(3) };
        let iso = verify_p2_iso(&v, samples)?;
        let mut ideal = pres.check_poisson_ideal();
        ideal.name = "P2 ideal is a Poisson ideal".into();
        Ok(Outcome::new("", json!({ "structure": src, "presentation": pres.to_json() })).check(iso).check(ideal))
    }

    fn suite_lattice(&self) -> Result<Outcome, CliError> {
        let l = self.lattice_input()?;
        let p = build_pl_algebra(&l)?;
        let mut out =
            Outcome::new("", json!({ "gram": l.gram(), "dim": p.dim(), "zero_algebra": p.is_zero_algebra() }))
                .check(p.check_all())
                .choice("cocycle", COCYCLE_RULE);
        if !p.is_zero_algebra() {
            out = out.check(p.cocycle().check_commutator(&l, p.c2()));
        }
        if l.rank() == 1 && l.is_positive_definite() {
            let k = (l.gram()[0][0] / 2) as u32;
            out = out.check(bk_compare(k)?);
        }
        Ok(out)
    }

    // ---- module commands ----

    fn bracket(&self, a: &str, m: i64, b: &str, n: i64) -> Result<Outcome, CliError> {
        let (s, src) = self.structure(true)?;
        let e = s.bracket_by_name(a, m, b, n)?;
        let text = s.format_mode_element(&e);
        Ok(Outcome::new(text.clone(), json!({ "structure": src, "bracket": text, "terms": mode_terms(&s, &e) })))
    }

    fn character(&self) -> Result<Outcome, CliError> {
        let (v, src) = self.module()?;
        let depth = self.depth_or(10);
        let dims = v.character(depth)?;
        let text = dims.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        Ok(Outcome::new(text, json!({ "structure": src, "depth": depth, "dims": dims }))
            .choice("monomial_order", MONOMIAL_ORDER))
    }

    fn act(&self, word: &str) -> Result<Outcome, CliError> {
        let (v, src) = self.module()?;
        let modes = parse_word(word)?;
        let mut s = vertexlie::vacuum::StateVector::vacuum();
        for (name, n) in modes.iter().rev() {
            s = v.act_basis(name, *n, &s)?;
        }
        let text = v.format_state(&s);
        Ok(Outcome::new(
            text.clone(),
            json!({ "structure": src, "state": v.state_to_json(&s), "text": text, "degree": v.state_degree(&s) }),
        )
        .choice("monomial_order", MONOMIAL_ORDER))
    }

    fn borcherds(&self, a: Option<&str>, b: Option<&str>) -> Result<Outcome, CliError> {
        let (v, src) = self.module()?;
        let fields = noncentral_fields(v.structure());
        let pick = |x: Option<&str>| x.map(|n| vec![n.to_string()]).unwrap_or_else(|| fields.clone());
        let (la, lb) = (pick(a), pick(b));
        let w = self.window_or(3);
        let depth = self.depth_or(6);
        let mut rep = CheckReport::new("borcherds commutator");
        for x in &la {
            for y in &lb {
                rep.merge(v.borcherds_check(&v.field_state(x)?, &v.field_state(y)?, w, depth)?);
            }
        }
        let text =
            format!("fields {} against {}, |m|,|n| <= {w}, states of degree <= {depth}", la.join(","), lb.join(","));
        Ok(Outcome::new(text, json!({ "structure": src, "a": la, "b": lb, "window": w, "depth": depth })).check(rep))
    }

    fn p2(&self, eliminate: bool) -> Result<Outcome, CliError> {
        let (v, src) = self.module()?;
        let mut pres = p2_structure_of(&v)?;
        if eliminate {
            pres = pres.eliminate();
        }
        Ok(presentation_outcome(&pres).choice("structure", src))
    }

    fn vp_algebra(&self, preset: Option<&str>) -> Result<(VPDiffAlgebra, String), CliError> {
        if let Some(t) = &self.cfg.vertex_poisson {
            return Ok((t.build()?, "inline".into()));
        }
        if let Some(lie) = &self.cfg.lie {
            let (g, _) = lie.build()?;
            return Ok((VPDiffAlgebra::ultra_poisson(&g), "ultra-inline".into()));
        }
        let name = preset.unwrap_or("ultra-sl2");
        let g = name
            .strip_prefix("ultra-")
            .and_then(presets::by_name)
            .ok_or_else(|| CliError::Usage(format!("unknown preset {name:?}; expected ultra-<lie algebra>")))?;
        Ok((VPDiffAlgebra::ultra_poisson(&g), name.to_string()))
    }

    fn vp_check(&self, preset: Option<&str>) -> Result<Outcome, CliError> {
        let (a, src) = self.vp_algebra(preset)?;
        let mut table = Vec::new();
        let mut text = Vec::new();
        for i in 0..a.ngens() {
            for j in 0..a.ngens() {
                let s = a.table(i, j);
                if !s.is_zero() {
                    let f = a.format_series(s);
                    text.push(format!("{{{}, {}}} = {f}", a.names()[i], a.names()[j]));
                    table.push(json!([a.names()[i], a.names()[j], f]));
                }
            }
        }
        Ok(Outcome::new(text.join("\n"), json!({ "source": src, "generators": a.names(), "table": table }))
            .check(a.check_table_skew())
            .check(a.check_extension(&a.default_samples())))
    }

    fn pvpa(&self, preset: Option<&str>) -> Result<Outcome, CliError> {
        let (a, src) = self.vp_algebra(preset)?;
        Ok(presentation_outcome(&a.pvpa_quotient()?).choice("source", src))
    }

    fn lattice(&self, action: LatticeAction, k: Option<u32>) -> Result<Outcome, CliError> {
        match action {
            LatticeAction::BkCompare => {
                let k = match (k, &self.gram) {
                    (Some(k), _) => k,
                    (None, Some(g)) if g.len() == 1 && g[0].len() == 1 && g[0][0] > 0 && g[0][0] % 2 == 0 => {
                        (g[0][0] / 2) as u32
                    }
                    _ => return Err(CliError::Usage("bk-compare needs --k or a rank-one --gram [[2k]]".into())),
                };
                let rep = bk_compare(k)?;
                Ok(Outcome::new(format!("k = {k}, dimension {}", 2 * k + 3), json!({ "k": k, "dim": 2 * k + 3 }))
                    .check(rep))
            }
            LatticeAction::C2Set => {
                let l = self.lattice_input()?;
                let def = detect_indefinite(&l)?;
                let c2 = match def {
                    Definiteness::PositiveDefinite => l.enumerate_c2()?,
                    Definiteness::Indefinite { .. } => Vec::new(),
                };
                let mut text: Vec<String> = c2.iter().map(|v| format!("{v:?}")).collect();
                if let Definiteness::Indefinite { witness } = &def {
                    match witness {
                        Some(v) => text.push(format!("indefinite: {v:?} has negative norm")),
                        None => text.push("indefinite".into()),
                    }
                }
                text.push(format!("{} vectors", c2.len()));
                let cocycle = Cocycle::new(&l);
                Ok(Outcome::new(
                    text.join("\n"),
                    json!({ "gram": l.gram(), "definiteness": def, "c2": c2, "cocycle": cocycle }),
                )
                .choice("cocycle", COCYCLE_RULE))
            }
            LatticeAction::P2 | LatticeAction::Poisson => {
                let l = self.lattice_input()?;
                let p = build_pl_algebra(&l)?;
                let j = p.to_json();
                let mut text = vec![format!("dim {}", j.dim), format!("C2: {} vectors", j.c2.len())];
                text.push(format!("basis: {}", j.basis.join(", ")));
                let mut out = Outcome::new(String::new(), serde_json::to_value(&j).expect("serializable"));
                if action == LatticeAction::Poisson {
                    for (a, b, c) in &j.bracket_table {
                        text.push(format!("{{{a}, {b}}} = {c}"));
                    }
                    out = out.check(p.check_all());
                } else {
                    for (a, b, c) in &j.mult_table {
                        text.push(format!("{a} * {b} = {c}"));
                    }
                }
                out.text = text.join("\n");
                Ok(out.choice("cocycle", COCYCLE_RULE))
            }
        }
    }

    fn decompose(&self, input: &Path, order: Option<u32>) -> Result<Outcome, CliError> {
        let text = std::fs::read_to_string(input)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", input.display())))?;
        let input_series: SeriesInput = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("series error in {}: {e}", input.display())))?;
        let (sampled, k, w) = match (&input_series.terms, &input_series.cells) {
            (Some(terms), None) => {
                let mut s = DeltaSeries::zero(Side::Y);
                for t in terms {
                    let mut g = LaurentPoly::zero(&["y"]);
                    for (e, c) in &t.coeff {
                        g.add_term(vec![*e], c.clone());
                    }
                    s.add_term(t.order, &g);
                }
                let k = order.or(input_series.order).unwrap_or(s.max_order().unwrap_or(0));
                let r = self.window.map(i64::from).unwrap_or(oracle_radius(&s).max(k as i64 + 1));
                let w = Window::radius(r);
                (s.render(w), k, w)
            }
            (None, Some(cells)) => {
                let k = order
                    .or(input_series.order)
                    .ok_or_else(|| CliError::Usage("cell input needs --order or an `order` field".into()))?;
                let extent = cells.iter().map(|(a, b, _)| a.abs().max(b.abs())).max().unwrap_or(0);
                let r = self.window.map(i64::from).unwrap_or(extent.max(k as i64 + 1));
                let w = Window::radius(r);
                let mut grid = BiSeriesWindow::zeros(w);
                for (a, b, c) in cells {
                    if !w.contains(*a, *b) {
                        return Err(CliError::Usage(format!("cell ({a}, {b}) lies outside the window of radius {r}")));
                    }
                    grid.set(*a, *b, c.clone());
                }
                (grid, k, w)
            }
            _ => return Err(CliError::Usage("series input needs exactly one of `terms` or `cells`".into())),
        };
        let d = decompose(&sampled, k, w)?;
        let terms: Vec<Value> = d
            .terms()
            .map(|(i, g)| {
                let coeff: Vec<Value> = g.terms().map(|(e, c)| json!([e[0], c])).collect();
                json!({ "order": i, "coeff": coeff })
            })
            .collect();
        Ok(Outcome::new(d.to_string(), json!({ "order": k, "window": w.hi_x, "terms": terms })))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesInput {
    #[serde(default)]
    order: Option<u32>,
    #[serde(default)]
    terms: Option<Vec<SeriesTerm>>,
    /// `[a, b, c]`: coefficient `c` of `x^a y^b`.
    #[serde(default)]
    cells: Option<Vec<(i64, i64, Rational)>>,
}

/// `Σ_e c y^e` times the `order`-th derivative of the delta function.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesTerm {
    order: u32,
    coeff: Vec<(i64, Rational)>,
}

fn presentation_outcome(p: &PoissonPresentation) -> Outcome {
    Outcome::new(p.to_string(), serde_json::to_value(p.to_json()).expect("serializable"))
}

fn mode_terms(s: &VLStructure, e: &ModeElement) -> Vec<Value> {
    e.terms().map(|(m, c)| json!([s.gen_name(m.gen), m.n, c])).collect()
}

fn noncentral_fields(s: &VLStructure) -> Vec<String> {
    s.generators().iter().filter(|g| !g.central).map(|g| g.name.clone()).collect()
}

/// Parses `name(n) name(n) …`.
fn parse_word(word: &str) -> Result<Vec<(String, i64)>, CliError> {
    let bad = |t: &str| CliError::Usage(format!("cannot read mode {t:?}; expected name(n)"));
    word.split_whitespace()
        .map(|t| {
            let (name, rest) = t.split_once('(').ok_or_else(|| bad(t))?;
            let n = rest.strip_suffix(')').ok_or_else(|| bad(t))?;
            Ok((name.to_string(), n.parse().map_err(|_| bad(t))?))
        })
        .collect()
}

/// Graded dimensions of a free commutative algebra on creators `u(-j)`,
/// `j >= 1`, of degree `deg u + j - 1`, one family per non-central generator.
fn product_character(s: &VLStructure, depth: i64) -> Option<Vec<usize>> {
    let mut dims = vec![0usize; depth as usize + 1];
    dims[0] = 1;
    for g in s.generators().iter().filter(|g| !g.central) {
        let d0 = g.degree?;
        if d0 <= 0 {
            return None;
        }
        for part in d0..=depth {
            for n in part..=depth {
                dims[n as usize] += dims[(n - part) as usize];
            }
        }
    }
    Some(dims)
}

fn random_series(rng: &mut ChaCha8Rng) -> DeltaSeries<LaurentPoly> {
    let mut s = DeltaSeries::zero(Side::Y);
    for k in 0..=rng.gen_range(0..=5u32) {
        if rng.gen_bool(0.3) {
            continue;
        }
        let mut g = LaurentPoly::zero(&["y"]);
        for _ in 0..rng.gen_range(1..=3) {
            let e = rng.gen_range(-4..=4);
            let c = Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            g.add_term(vec![e], c);
        }
        s.add_term(k, &g);
    }
    s
}
