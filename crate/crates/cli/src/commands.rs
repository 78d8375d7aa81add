//! Subcommand implementations. Reports are `serde_json::Value` objects with
//! sorted keys, so identical inputs give byte-identical output.

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use serde_json::{json, Value};
use tiltlab_core::fpmod::ModuleJson;
use tiltlab_core::fuchs_salce::{
    build_truncation, ext_vanishing_probe, filtration_quotient, verify_depth_divisibility, TreeTruncation,
};
use tiltlab_core::localization::{compare_with_fuchs_salce, divisible_in_limit};
use tiltlab_core::spectrum::{admissible, enumerate_tilting_classes, minimal_primes, GabrielTopologyFG, PrimeIdeal, ThomasonSet};
use tiltlab_core::tilting::{
    ctr, ctr_warning, dagger, in_cotilting_class, in_tilting_class, is_divisible, lemma_transpose_check, pd_at_most_1,
    transpose,
};
use tiltlab_core::{CanonicalInvariants, FpModule, Ideal, RingSpec};

use crate::config::Config;
use crate::session::{Object, Session, SCHEMA};
use crate::{ClassKind, Cli, Command, Verify};

pub struct Outcome {
    pub report: Value,
    pub verdict: Option<bool>,
}

fn report(command: &str, mut body: Value, verdict: Option<bool>) -> Outcome {
    let map = body.as_object_mut().expect("report body is an object");
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("command".into(), json!(command));
    if let Some(v) = verdict {
        map.insert("verdict".into(), json!(v));
    }
    Outcome { report: body, verdict }
}

fn resolve_ring(arg: Option<&str>, session: &Session) -> Result<RingSpec> {
    let text = arg
        .or(session.ring.as_deref())
        .ok_or_else(|| anyhow!("no ring given (use --ring or a session with a ring)"))?;
    Ok(text.parse()?)
}

fn load_module(src: &str, session: &Session) -> Result<FpModule> {
    let json: ModuleJson = if let Some(name) = src.strip_prefix('@') {
        match session.get(name)? {
            Object::Module { module } => module.clone(),
            other => bail!("`{name}` is a {}, not a module", other.kind()),
        }
    } else if src.trim_start().starts_with('{') {
        serde_json::from_str(src).context("malformed inline module JSON")?
    } else {
        let text = std::fs::read_to_string(src).with_context(|| format!("reading module {src}"))?;
        serde_json::from_str(&text).with_context(|| format!("malformed module file {src}"))?
    };
    Ok(json.to_module()?)
}

fn load_basis(ring: &RingSpec, src: &str, session: &Session) -> Result<Vec<Ideal>> {
    if let Some(name) = src.strip_prefix('@') {
        let texts = match session.get(name)? {
            Object::Topology { basis } | Object::Thomason { basis } => basis,
            other => bail!("`{name}` is a {}, not a basis", other.kind()),
        };
        return texts.iter().map(|t| Ok(Ideal::parse(ring, t)?)).collect();
    }
    Ok(Ideal::parse_list(ring, src)?)
}

fn ideal_strings(ideals: &[Ideal]) -> Vec<String> {
    ideals.iter().map(Ideal::to_string).collect()
}

fn invariants_value(inv: &CanonicalInvariants, ring: &RingSpec) -> Value {
    match (inv, ring.components()) {
        (CanonicalInvariants::Product(a, b), Some((ra, rb))) => json!({
            "left": invariants_value(a, ra),
            "right": invariants_value(b, rb),
        }),
        _ => json!({
            "free_rank": inv.free_rank(),
            "torsion": inv.torsion_strings(ring),
        }),
    }
}

fn invariants(m: &FpModule) -> Value {
    let inv = m.canonical_invariants();
    json!({
        "summary": inv.describe(&m.ring),
        "invariants": invariants_value(&inv, &m.ring),
    })
}

fn module_value(m: &FpModule) -> Value {
    serde_json::to_value(ModuleJson::from_module(m)).expect("module serializes")
}

fn module_inline(m: &FpModule) -> String {
    serde_json::to_string(&ModuleJson::from_module(m)).expect("module serializes")
}

fn argv(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn store_module(session: &mut Session, name: Option<&String>, m: &FpModule, log: Vec<String>) -> Result<()> {
    if let Some(name) = name {
        let object = Object::Module {
            module: ModuleJson::from_module(m),
        };
        session.insert(&m.ring.to_string(), name, object, log)?;
    }
    Ok(())
}

pub fn run(command: &Command, session: &mut Session, cfg: &Config) -> Result<Outcome> {
    match command {
        Command::Classify { ring } => {
            let ring = resolve_ring(ring.as_deref(), session)?;
            let classes = enumerate_tilting_classes(&ring)?;
            let list = classes
                .iter()
                .map(|g| {
                    Ok(json!({
                        "basis": ideal_strings(&g.basis),
                        "thomason": g.xi().to_string(),
                        "admissible": admissible(&g.xi())?,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(report(
                "classify",
                json!({ "ring": ring.to_string(), "count": list.len(), "classes": list }),
                None,
            ))
        }
        Command::Transpose { module, name } | Command::Dagger { module, name } => {
            let is_transpose = matches!(command, Command::Transpose { .. });
            let m = load_module(module, session)?;
            let (cmd, result) = if is_transpose {
                ("transpose", transpose(&m))
            } else {
                ("dagger", dagger(&m)?)
            };
            let inline = module_inline(&m);
            let mut log = argv(&[cmd, "--module", &inline]);
            if let Some(n) = name {
                log.extend(argv(&["--name", n]));
            }
            store_module(session, name.as_ref(), &result, log)?;
            let mut body = json!({
                "ring": m.ring.to_string(),
                "input": invariants(&m),
                "result": invariants(&result),
                "module": module_value(&result),
            });
            if !is_transpose {
                body["input_pd_at_most_1"] = json!(pd_at_most_1(&m)?);
            }
            Ok(report(cmd, body, None))
        }
        Command::Ctr { ring, ideal, name } => {
            let ring = resolve_ring(ring.as_deref(), session)?;
            let i = Ideal::parse(&ring, ideal)?;
            let result = ctr(&i);
            let rs = ring.to_string();
            let mut log = argv(&["ctr", "--ring", &rs, "--ideal", ideal]);
            if let Some(n) = name {
                log.extend(argv(&["--name", n]));
            }
            store_module(session, name.as_ref(), &result, log)?;
            Ok(report(
                "ctr",
                json!({
                    "ring": rs,
                    "ideal": i.to_string(),
                    "result": invariants(&result),
                    "module": module_value(&result),
                    "warning": ctr_warning(&i),
                }),
                None,
            ))
        }
        Command::Member { class, module, basis } => {
            let m = load_module(module, session)?;
            let ring = m.ring.clone();
            let basis = load_basis(&ring, basis, session)?;
            let g = GabrielTopologyFG::new(&ring, basis.clone())?;
            let mut per_ideal = Vec::new();
            for i in &basis {
                let holds = match class {
                    ClassKind::Tilting => is_divisible(&m, i)?,
                    ClassKind::Cotilting => FpModule::cyclic(&ring, &i.generators).hom(&m)?.is_zero(),
                };
                per_ideal.push(json!({ "ideal": i.to_string(), "holds": holds }));
            }
            let (label, verdict) = match class {
                ClassKind::Tilting => ("tilting", in_tilting_class(&m, &g)?),
                ClassKind::Cotilting => ("cotilting", in_cotilting_class(&m, &g)?),
            };
            Ok(report(
                "member",
                json!({
                    "ring": ring.to_string(),
                    "class": label,
                    "basis": ideal_strings(&basis),
                    "module": invariants(&m),
                    "per_ideal": per_ideal,
                }),
                Some(verdict),
            ))
        }
        Command::CheckLemma { m, n } => {
            let m = load_module(m, session)?;
            let n = load_module(n, session)?;
            let rep = lemma_transpose_check(&m, &n)?;
            let ring = &m.ring;
            let inv = |i: &CanonicalInvariants| {
                json!({ "summary": i.describe(ring), "invariants": invariants_value(i, ring) })
            };
            Ok(report(
                "check-lemma",
                json!({
                    "ring": ring.to_string(),
                    "hom": inv(&rep.hom),
                    "tor1_transpose": inv(&rep.tor1_transpose),
                    "tensor": inv(&rep.tensor),
                    "ext1_transpose": inv(&rep.ext1_transpose),
                    "hom_matches": rep.hom_matches(),
                    "tensor_matches": rep.tensor_matches(),
                    "transpose_pd_at_most_1": rep.transpose_pd_at_most_1,
                }),
                Some(rep.holds()),
            ))
        }
        Command::FuchsSalce {
            ring,
            ideals,
            depth,
            verify,
            name,
        } => {
            let ring = resolve_ring(ring.as_deref(), session)?;
            let list = Ideal::parse_list(&ring, ideals)?;
            let t = build_truncation(&ring, &list, *depth, cfg.tree_limit)?;
            let (body, verdict) = fuchs_salce_report(&t, *verify)?;
            if let Some(n) = name {
                let rs = ring.to_string();
                let d = depth.to_string();
                let log = argv(&["fuchs-salce", "--ring", &rs, "--ideals", ideals, "--depth", &d, "--name", n]);
                let object = Object::Tree {
                    ideals: ideal_strings(&list),
                    depth: *depth,
                };
                session.insert(&rs, n, object, log)?;
            }
            Ok(report("fuchs-salce", body, verdict))
        }
        Command::Localize {
            ring,
            s,
            gabriel,
            bound,
            compare,
        } => {
            let ring = resolve_ring(ring.as_deref(), session)?;
            let s = ring.parse_elem(s)?;
            let basis = load_basis(&ring, gabriel, session)?;
            let g = GabrielTopologyFG::new(&ring, basis)?;
            let bound = bound.unwrap_or(cfg.stage_bound);
            let v = divisible_in_limit(&g, &s, bound)?;
            let witnesses: Vec<Value> = v
                .witnesses
                .iter()
                .map(|(i, k)| json!({ "ideal": i.to_string(), "stage": k }))
                .collect();
            let mut body = json!({
                "ring": ring.to_string(),
                "s": ring.format_elem(&s),
                "gabriel": ideal_strings(&g.basis),
                "bound": bound,
                "witnesses": witnesses,
                "warnings": v.warnings,
                "scope": "divisibility is tested on the finitely presented stage quotients R/(s^k), k <= bound",
            });
            let mut verdict = v.witnessed();
            if let Some(depth) = compare {
                let c = compare_with_fuchs_salce(&ring, &s, *depth)?;
                body["tower_comparison"] = json!({
                    "depth": depth,
                    "tree_quotient": c.tree_quotient.describe(&ring),
                    "stage": c.stage.describe(&ring),
                    "agree": c.agree(),
                });
                verdict &= c.agree();
            }
            Ok(report("localize", body, Some(verdict)))
        }
        Command::GabrielMember {
            ring,
            basis,
            ideal,
            name,
        } => {
            let ring = resolve_ring(ring.as_deref(), session)?;
            let b = load_basis(&ring, basis, session)?;
            let g = GabrielTopologyFG::new(&ring, b)?;
            let j = Ideal::parse(&ring, ideal)?;
            let verdict = g.contains_checked(&j, cfg.oracle_bound)?;
            let body = json!({
                "ring": ring.to_string(),
                "basis": ideal_strings(&g.basis),
                "ideal": j.to_string(),
                "oracle_bound": cfg.oracle_bound,
                "faithful": g.faithful,
                "admissible": admissible(&g.xi())?,
            });
            if let Some(n) = name {
                let rs = ring.to_string();
                let basis_text = ideal_strings(&g.basis).join(";");
                let log = argv(&["gabriel-member", "--ring", &rs, "--basis", &basis_text, "--ideal", ideal, "--name", n]);
                let object = Object::Topology {
                    basis: ideal_strings(&g.basis),
                };
                session.insert(&rs, n, object, log)?;
            }
            Ok(report("gabriel-member", body, Some(verdict)))
        }
        Command::Thomason {
            ring,
            basis,
            primes,
            name,
        } => {
            let ring = resolve_ring(ring.as_deref(), session)?;
            let b = load_basis(&ring, basis, session)?;
            let x = ThomasonSet::new(&ring, b)?;
            let mut minimal = Vec::new();
            for i in &x.basis {
                let ps: Vec<String> = minimal_primes(i)?.iter().map(PrimeIdeal::to_string).collect();
                minimal.push(json!({ "ideal": i.to_string(), "minimal_primes": ps }));
            }
            let all_primes = match x.primes() {
                Ok(ps) => json!(ps.iter().map(PrimeIdeal::to_string).collect::<Vec<_>>()),
                Err(tiltlab_core::Error::InfiniteSpectrum(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let mut membership = Vec::new();
            for p in primes {
                let p = PrimeIdeal::parse(&ring, p)?;
                membership.push(json!({ "prime": p.to_string(), "contains": x.contains(&p)? }));
            }
            let body = json!({
                "ring": ring.to_string(),
                "basis": ideal_strings(&x.basis),
                "set": x.to_string(),
                "admissible": admissible(&x)?,
                "basis_primes": minimal,
                "primes": all_primes,
                "membership": membership,
            });
            if let Some(n) = name {
                let rs = ring.to_string();
                let basis_text = ideal_strings(&x.basis).join(";");
                let log = argv(&["thomason", "--ring", &rs, "--basis", &basis_text, "--name", n]);
                let object = Object::Thomason {
                    basis: ideal_strings(&x.basis),
                };
                session.insert(&rs, n, object, log)?;
            }
            Ok(report("thomason", body, None))
        }
        Command::Save { path } => {
            session.write(path)?;
            Ok(report(
                "save",
                json!({
                    "path": path.display().to_string(),
                    "ring": session.ring,
                    "objects": session.objects.len(),
                    "log": session.log.len(),
                }),
                None,
            ))
        }
        Command::Load { path } => {
            let loaded = Session::read(path)?;
            let replayed = replay(&loaded, cfg)?;
            let identical = replayed.to_json() == loaded.to_json();
            let objects: Vec<Value> = loaded
                .objects
                .iter()
                .map(|(k, o)| json!({ "name": k, "kind": o.kind() }))
                .collect();
            let body = json!({
                "path": path.display().to_string(),
                "ring": loaded.ring,
                "objects": objects,
                "log": loaded.log.len(),
                "replay_identical": identical,
            });
            *session = loaded;
            Ok(report("load", body, Some(identical)))
        }
    }
}

/// Re-executes the provenance log on an empty session.
pub fn replay(saved: &Session, cfg: &Config) -> Result<Session> {
    let mut fresh = Session::default();
    for (k, entry) in saved.log.iter().enumerate() {
        let cli = Cli::try_parse_from(std::iter::once("tiltlab".to_string()).chain(entry.iter().cloned()))
            .with_context(|| format!("log entry {k} does not parse"))?;
        if matches!(cli.command, Command::Save { .. } | Command::Load { .. }) {
            bail!("log entry {k}: save/load cannot be replayed");
        }
        run(&cli.command, &mut fresh, cfg).with_context(|| format!("replaying log entry {k}"))?;
    }
    Ok(fresh)
}

fn fuchs_salce_report(t: &TreeTruncation, verify: Verify) -> Result<(Value, Option<bool>)> {
    let ring = &t.ring;
    let levels: Vec<Value> = (0..=t.depth)
        .map(|k| {
            json!({
                "level": k,
                "width": t.level_width(k),
                "module": invariants(&t.level_module(k)),
            })
        })
        .collect();
    let non_faithful: Vec<String> = t.non_faithful().iter().map(|&i| t.ideals[i].to_string()).collect();
    let mut body = json!({
        "ring": ring.to_string(),
        "ideals": ideal_strings(&t.ideals),
        "depth": t.depth,
        "branching": t.branching(),
        "generators": t.ngens(),
        "relations": t.nrelations(),
        "levels": levels,
        "without_root": invariants(&t.without_root()),
        "non_faithful": non_faithful,
    });
    if verify == Verify::None {
        return Ok((body, None));
    }
    let mut verdict = true;
    let mut checks = serde_json::Map::new();
    if matches!(verify, Verify::Filtration | Verify::All) {
        let mut items = Vec::new();
        for k in 0..t.depth {
            let f = filtration_quotient(t, k)?;
            verdict &= f.isomorphic;
            items.push(json!({
                "level": k,
                "quotient": invariants(&f.quotient),
                "expected": invariants(&f.expected),
                "holds": f.isomorphic,
            }));
        }
        checks.insert("filtration".into(), json!(items));
    }
    if matches!(verify, Verify::Divisibility | Verify::All) {
        let d = verify_depth_divisibility(t)?;
        verdict &= d.passed();
        let failures: Vec<Value> = d
            .failures
            .iter()
            .map(|&(node, i)| json!({ "node": node, "ideal": t.ideals[i].to_string() }))
            .collect();
        checks.insert(
            "divisibility".into(),
            json!({ "checked": d.checked, "failures": failures, "holds": d.passed() }),
        );
    }
    if matches!(verify, Verify::Probe | Verify::All) {
        let g = GabrielTopologyFG::new(ring, t.ideals.clone())?;
        let p = ext_vanishing_probe(t, &g)?;
        verdict &= p.consistent();
        let items: Vec<Value> = p
            .items
            .iter()
            .map(|i| json!({ "label": i.label, "holds": i.holds, "expected": i.expected }))
            .collect();
        checks.insert("probe".into(), json!({ "items": items, "consistent": p.consistent() }));
    }
    body["checks"] = Value::Object(checks);
    Ok((body, Some(verdict)))
}
