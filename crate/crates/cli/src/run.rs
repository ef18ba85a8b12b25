//! Dispatch from an [`ExperimentConfig`] to the core library.

use std::fs;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use atomlab_core::blur::{blowup_truncate, check_blur, term_approx_elements, BlurParams};
use atomlab_core::cylindric::{
    ca_atom_structure, check_amalgamation, check_ca_identities, check_term_inequality, enumerate_basic_matrices,
    CaAtomStructure,
};
use atomlab_core::games::{parse_certificate, solve_ca_game, solve_triangle_game, Board, Certificate, GameResult};
use atomlab_core::graphs::{
    certify, erdos_sample, find_monochromatic_triangle, ramsey_exhaustive, EdgeColouring, ErdosParams, Graph,
    GraphCertificate,
};
use atomlab_core::ra::{
    check_ra_axioms, find_embedding_into, verify_embedding, ComplexAlgebra, Embedding, ImageFamily,
};
use atomlab_core::symsets::{product_demo, rx_structure_demo};
use atomlab_core::{AlgebraSpec, AtomStructure, Error, GameConfig, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cache::{cache_key, Cache};
use crate::config::*;
use crate::report::{Report, Status, SCHEMA, VERSION};

pub struct Outcome {
    pub result: Value,
    pub certificate: Option<Value>,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub verify: bool,
    pub timing: bool,
}

fn build(spec: &str) -> Result<AtomStructure> {
    Ok(spec.parse::<AlgebraSpec>()?.build()?)
}

fn ca_board(s: &AtomStructure) -> Result<CaAtomStructure> {
    Ok(ca_atom_structure(s, enumerate_basic_matrices(s, 3)?)?)
}

fn game_config(s: &AtomStructure, g: &GameArgs) -> Result<GameConfig> {
    let mut cfg = GameConfig::new(g.variant, g.rounds);
    if let Some(k) = g.nodes {
        cfg = cfg.budget(k);
    }
    if let Some(name) = &g.start {
        let a = s.find(name).ok_or_else(|| Error::UnknownAtom(name.clone()))?;
        cfg = cfg.start_atom(a);
    }
    Ok(cfg)
}

fn solve(s: &AtomStructure, cfg: &GameConfig) -> Result<GameResult> {
    Ok(match cfg.variant {
        Variant::Ca => solve_ca_game(&ca_board(s)?, cfg)?,
        _ => solve_triangle_game(s, cfg)?,
    })
}

fn replay(s: &AtomStructure, cfg: &GameConfig, cert: &Certificate) -> Result<atomlab_core::games::Verification> {
    Ok(match cfg.variant {
        Variant::Ca => {
            let ca = ca_board(s)?;
            cert.verify(Board::Cylindric(&ca), cfg)
        }
        _ => cert.verify(Board::Relation(s), cfg),
    })
}

fn algebra(spec: AlgebraSpec, opts: &AlgebraOpts) -> Result<Outcome> {
    let s = spec.build()?;
    let mut result = json!({
        "spec": spec.to_string(),
        "atoms": s.atom_count(),
        "labels": s.labels(),
        "identity": s.label(s.identity()),
        "symmetric": s.is_symmetric(),
        "consistent_triples": s.consistent_triples().len(),
    });
    let mut pass = true;
    if opts.check {
        let rep = check_ra_axioms(&s);
        pass = rep.all_pass();
        result["axioms_pass"] = json!(pass);
        result["axioms"] = serde_json::to_value(&rep)?;
    }
    if opts.emit {
        result["text"] = json!(s.to_spec_text());
    }
    Ok(Outcome { result, certificate: None, pass })
}

/// Blow-up family for `--family term-approx`; the target must be a blow-up spec.
fn term_family(dst: &str) -> Result<(AtomStructure, Box<dyn ImageFamily>)> {
    match dst.parse::<AlgebraSpec>()? {
        AlgebraSpec::Blowup { base, n, l, depth, safety } => {
            let m = base.build()?;
            let params = BlurParams::new(n, l, m.atom_count() - 1)?;
            let blown = blowup_truncate(&m, &params, depth, safety)?;
            let family = term_approx_elements(&blown);
            Ok((blown.structure, Box::new(family)))
        }
        _ => bail!(Error::InvalidParameter("term-approx needs a blowup: target".into())),
    }
}

fn embed_target(e: &EmbedArgs) -> Result<(AtomStructure, Box<dyn ImageFamily>)> {
    match e.family {
        Family::Cm => Ok((build(&e.dst)?, Box::new(ComplexAlgebra))),
        Family::TermApprox => term_family(&e.dst),
    }
}

fn embed(e: &EmbedArgs) -> Result<Outcome> {
    let src = build(&e.src)?;
    let (dst, family) = embed_target(e)?;
    let search = find_embedding_into(&src, &dst, family.as_ref());
    let images: Option<Vec<Vec<&str>>> = search
        .embedding
        .as_ref()
        .map(|emb| emb.images.iter().map(|x| x.iter().map(|a| dst.label(a)).collect()).collect());
    let result = json!({
        "src_atoms": src.atom_count(),
        "dst_atoms": dst.atom_count(),
        "family": e.family,
        "found": search.embedding.is_some(),
        "nodes": search.nodes,
        "leaves": search.leaves,
        "images": images,
    });
    let certificate = search.embedding.as_ref().map(serde_json::to_value).transpose()?;
    Ok(Outcome { result, certificate, pass: true })
}

fn ramsey_sampled(m: usize, samples: u64, seed: u64) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let colours = (0..m * m.saturating_sub(1) / 2).map(|_| rng.random_range(0..2u8)).collect();
        let c = EdgeColouring::new(m, colours);
        if find_monochromatic_triangle(&c).is_none() {
            return json!({ "m": m, "colourings": i + 1, "all_have_triangle": false, "counterexample": c });
        }
    }
    json!({ "m": m, "colourings": samples, "all_have_triangle": true, "counterexample": null })
}

fn graph_outcome(g: &Graph, cert: GraphCertificate, mut result: Value) -> Result<Outcome> {
    let ok = cert.verify(g).is_ok();
    result["vertices"] = json!(g.vertex_count());
    result["edges"] = json!(g.edge_count());
    result["girth"] = json!(cert.girth);
    result["chromatic_number"] = json!(cert.chromatic_number);
    result["chi_lower_bound"] = json!(cert.chi_lower_bound);
    result["independence_number"] = json!(cert.independence_number);
    result["graph"] = json!(g.to_text());
    Ok(Outcome { result, certificate: Some(serde_json::to_value(&cert)?), pass: ok })
}

pub fn execute(cfg: &ExperimentConfig) -> Result<Outcome> {
    use Command::*;
    match &cfg.command {
        Algebra(AlgebraCmd::Ek { k, opts }) => algebra(AlgebraSpec::Ek(*k), opts),
        Algebra(AlgebraCmd::Bicolour { n0, n1, opts }) => algebra(AlgebraSpec::Bicolour(*n0, *n1), opts),
        Algebra(AlgebraCmd::Spec { alg, opts }) => algebra(alg.parse()?, opts),
        Blur(BlurCmd::Check { n, l, k, alg }) => {
            let m = match alg {
                Some(a) => build(a)?,
                None => AlgebraSpec::Ek(*k).build()?,
            };
            let rep = check_blur(&m, &BlurParams::new(*n, *l, *k)?)?;
            let pass = rep.j4_holds && rep.j5_holds;
            Ok(Outcome { result: serde_json::to_value(&rep)?, certificate: None, pass })
        }
        Basis(BasisCmd::Enum { alg, dim, list }) => {
            let s = build(alg)?;
            let ms = enumerate_basic_matrices(&s, *dim)?;
            let mut result = json!({ "dim": dim, "count": ms.len() });
            if *list {
                result["matrices"] = json!(ms.iter().map(|m| m.render(&s)).collect::<Vec<_>>());
            }
            Ok(Outcome { result, certificate: None, pass: true })
        }
        Basis(BasisCmd::Amalgamation { alg, dim }) => {
            let s = build(alg)?;
            let ms = enumerate_basic_matrices(&s, *dim)?;
            let rep = check_amalgamation(&ms)?;
            let mut result = serde_json::to_value(&rep)?;
            if let Some(w) = &rep.witness {
                result["witness_matrices"] = json!([ms[w.m].render(&s), ms[w.n].render(&s)]);
            }
            Ok(Outcome { result, certificate: None, pass: rep.pass })
        }
        Term(TermCmd::Check { which, base, dim, samples }) => {
            let rep = check_term_inequality(*which, *base, *dim, *samples, cfg.seed)?;
            Ok(Outcome { pass: rep.holds, result: serde_json::to_value(&rep)?, certificate: None })
        }
        Term(TermCmd::Identities { base, dim }) => {
            let rep = check_ca_identities(*base, *dim)?;
            Ok(Outcome { pass: rep.holds(), result: serde_json::to_value(&rep)?, certificate: None })
        }
        Game(GameCmd::Solve { game, .. }) => {
            let s = build(&game.alg)?;
            let gc = game_config(&s, game)?;
            let res = solve(&s, &gc)?;
            let cert = res.certificate();
            let result = json!({
                "variant": game.variant,
                "winner": res.winner,
                "rounds": res.rounds,
                "node_budget": gc.node_budget,
                "start": res.start.as_ref().map(|n| n.render(&s)),
                "positions_explored": res.positions_explored,
                "strategy_positions": cert.strategy.exists.len() + cert.strategy.forall.len(),
            });
            Ok(Outcome { result, certificate: Some(json!(cert.to_text())), pass: true })
        }
        Game(GameCmd::Verify { game, cert }) => {
            let s = build(&game.alg)?;
            let gc = game_config(&s, game)?;
            let text = fs::read_to_string(cert).with_context(|| format!("reading {}", cert.display()))?;
            let c = parse_certificate(&text)?;
            let v = replay(&s, &gc, &c)?;
            let result = json!({
                "winner": c.winner,
                "rounds": c.rounds,
                "valid": v.valid,
                "failure": v.failure,
                "positions_checked": v.positions_checked,
            });
            Ok(Outcome { result, certificate: None, pass: v.valid })
        }
        Graph(GraphCmd::Erdos { chi, girth, max_n, attempts, p, .. }) => {
            let params = ErdosParams {
                chi_min: *chi,
                girth_min: *girth,
                max_n: *max_n,
                p: *p,
                seed: cfg.seed,
                attempts: *attempts,
                chi_limit: cfg.limits.chi_limit,
                ..ErdosParams::default()
            };
            match erdos_sample(&params)? {
                Some(smp) => {
                    let result = json!({
                        "found": true,
                        "attempt": smp.attempt,
                        "p": smp.p,
                        "deleted": smp.deleted,
                    });
                    let mut out = graph_outcome(&smp.graph, smp.certificate, result)?;
                    let c = &out.result;
                    let meets = c["chromatic_number"].as_u64().is_some_and(|x| x >= *chi as u64)
                        && c["girth"].as_u64().is_none_or(|g| g >= *girth as u64);
                    out.pass &= meets;
                    Ok(out)
                }
                None => Ok(Outcome {
                    result: json!({ "found": false, "attempts": attempts, "p": params.edge_probability() }),
                    certificate: None,
                    pass: false,
                }),
            }
        }
        Graph(GraphCmd::Cert { file, .. }) => {
            let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let g = atomlab_core::Graph::parse(&text)?;
            let cert = certify(&g, cfg.limits.chi_limit)?;
            graph_outcome(&g, cert, json!({}))
        }
        Graph(GraphCmd::Ramsey { m, exhaustive, samples }) => {
            let result = if *exhaustive {
                let mut v = serde_json::to_value(ramsey_exhaustive(*m)?)?;
                v["exhaustive"] = json!(true);
                v
            } else {
                let mut v = ramsey_sampled(*m, *samples, cfg.seed);
                v["exhaustive"] = json!(false);
                v
            };
            let pass = result["all_have_triangle"] == json!(true);
            Ok(Outcome { result, certificate: None, pass })
        }
        Sym(SymCmd::Additivity { demo, family, n, sample_k }) => match demo {
            Demo::Product => {
                let rep = product_demo(*family, *n)?;
                Ok(Outcome { pass: rep.holds(), result: serde_json::to_value(&rep)?, certificate: None })
            }
            Demo::Rx => {
                let rep = rx_structure_demo(*sample_k)?;
                Ok(Outcome { pass: rep.holds(), result: serde_json::to_value(&rep)?, certificate: None })
            }
        },
        Embed(e) => embed(e),
    }
}

/// Replays a report's certificate. `Ok(None)` when the report carries
/// nothing to replay.
pub fn reverify(cfg: &ExperimentConfig, report: &Report) -> Result<Option<Result<(), String>>> {
    use Command::*;
    let Some(cert) = &report.certificate else {
        return Ok(None);
    };
    let check = match &cfg.command {
        Game(GameCmd::Solve { game, .. }) => {
            let text = cert.as_str().ok_or_else(|| anyhow!("game certificate is not text"))?;
            let c = match parse_certificate(text) {
                Ok(c) => c,
                Err(e) => return Ok(Some(Err(e.to_string()))),
            };
            if json!(c.winner) != report.result["winner"] {
                return Ok(Some(Err(format!("certificate winner {} disagrees with the result", c.winner))));
            }
            let s = build(&game.alg)?;
            let v = replay(&s, &game_config(&s, game)?, &c)?;
            if v.valid {
                Ok(())
            } else {
                Err(v.failure.unwrap_or_default())
            }
        }
        Graph(GraphCmd::Erdos { .. } | GraphCmd::Cert { .. }) => {
            let gc: GraphCertificate = match serde_json::from_value(cert.clone()) {
                Ok(c) => c,
                Err(e) => return Ok(Some(Err(e.to_string()))),
            };
            let text = report.result["graph"].as_str().unwrap_or("");
            match atomlab_core::Graph::parse(text) {
                Ok(g) => gc.verify(&g),
                Err(e) => Err(e.to_string()),
            }
        }
        Embed(e) => {
            let emb: Embedding = match serde_json::from_value(cert.clone()) {
                Ok(x) => x,
                Err(e) => return Ok(Some(Err(e.to_string()))),
            };
            let src = build(&e.src)?;
            let (dst, family) = embed_target(e)?;
            verify_embedding(&src, &dst, &emb).and_then(|()| match emb.images.iter().position(|x| !family.admits(x)) {
                Some(i) => Err(format!("image of atom {i} is outside the family")),
                None => Ok(()),
            })
        }
        _ => return Ok(None),
    };
    Ok(Some(check))
}

/// DOT and certificate files requested on the command line, written from
/// the report so cached results produce them too.
pub fn write_sidecars(cfg: &ExperimentConfig, report: &Report) -> Result<()> {
    use Command::*;
    match &cfg.command {
        Game(GameCmd::Solve { game, cert_out, dot }) => {
            if let (Some(path), Some(Value::String(text))) = (cert_out, &report.certificate) {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = dot {
                let s = build(&game.alg)?;
                let text = match report.certificate.as_ref().and_then(|c| c.as_str()).map(parse_certificate) {
                    Some(Ok(Certificate { start: Some(net), .. })) => net.to_dot(&s),
                    _ => "digraph network {\n}\n".to_string(),
                };
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Graph(GraphCmd::Erdos { dot: Some(path), .. } | GraphCmd::Cert { dot: Some(path), .. }) => {
            if let Some(text) = report.result["graph"].as_str() {
                fs::write(path, atomlab_core::Graph::parse(text)?.to_dot())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        _ => {}
    }
    Ok(())
}

fn fresh(cfg: &ExperimentConfig) -> Result<Report> {
    let out = execute(cfg)?;
    Ok(Report {
        schema: SCHEMA.into(),
        experiment: cfg.experiment().into(),
        version: VERSION.into(),
        seed: cfg.seed,
        params: cfg.params(),
        status: Status::from_bool(out.pass),
        result: out.result,
        certificate: out.certificate,
        verified: None,
        elapsed_ms: None,
    })
}

/// Runs one experiment, consulting the cache when `cfg.cache_dir` is set.
/// Cached reports with a certificate are replayed before reuse.
pub fn run(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<Report> {
    let start = Instant::now();
    let cache = cfg.cache_dir.as_deref().map(Cache::new).transpose()?;
    let key = match &cache {
        Some(_) => Some(cache_key(cfg)?),
        None => None,
    };
    let mut hit = None;
    if let (Some(c), Some(k)) = (&cache, &key) {
        if let Some(r) = c.lookup(k) {
            let same = r.params == cfg.params() && r.version == VERSION && r.schema == SCHEMA;
            match (same, reverify(cfg, &r)?) {
                (false, _) => eprintln!("warning: cache entry {k} does not match this config; recomputing"),
                (true, Some(Err(why))) => eprintln!("warning: cached certificate rejected ({why}); recomputing"),
                (true, _) => hit = Some(r),
            }
        }
    }
    let mut report = match hit {
        Some(r) => r,
        None => {
            let r = fresh(cfg)?;
            if let (Some(c), Some(k)) = (&cache, &key) {
                c.store(k, &r)?;
            }
            r
        }
    };
    if opts.verify {
        let ok = match reverify(cfg, &report)? {
            Some(res) => res.is_ok(),
            None => true,
        };
        report.verified = Some(ok);
        if !ok {
            report.status = Status::Fail;
        }
    }
    write_sidecars(cfg, &report)?;
    if opts.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}
