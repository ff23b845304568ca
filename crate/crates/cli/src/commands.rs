use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use serde_json::{json, Value};
use zslab::constants::{
    davenport_constant, olson_constant, Checkpoint, ConstantResult, SearchConfig, SearchMode,
};
use zslab::extremal::{
    classify_max_zero_sum_free_f_p2, construct_grt_config, construct_stacked, olson3_experiment, Variant,
};
use zslab::group::GroupSpec;
use zslab::io::read_sequence;
use zslab::structure::{decompose, DecomposeOutcome, DecompositionParams};
use zslab::sumset::{is_incomplete, is_m_incomplete, is_m_zero_sum_free, is_zero_sum_free, subsums_all, subsums_exact};
use zslab::{ElementSequence, Error, Result};

use crate::report::{coords, sequence_json, subspace_json, Report, Status};
use crate::{
    CheckArgs, Cli, ClassifyArgs, Command, ConstructArgs, DecomposeArgs, Dump, ExtremalCommand, Olson3Args,
    SearchArgs, SumsetArgs,
};

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Sumset(a) => sumset(a),
        Command::Check(a) => check(a),
        Command::Decompose(a) => decompose_cmd(a, cli.seed),
        Command::Olson(a) => constant(a, SearchMode::Set, cli.threads),
        Command::Davenport(a) => constant(a, SearchMode::Sequence, cli.threads),
        Command::Extremal(ExtremalCommand::Construct(a)) => construct(a),
        Command::Extremal(ExtremalCommand::Classify(a)) => classify(a),
        Command::Extremal(ExtremalCommand::Olson3(a)) => olson3(a),
    }
}

fn load(path: &Path) -> Result<ElementSequence> {
    let seq = read_sequence(path)?;
    if seq.is_empty() {
        return Err(Error::Input("empty sequence".into()));
    }
    Ok(seq)
}

fn sumset(a: &SumsetArgs) -> Result<Report> {
    let seq = load(&a.file)?;
    let spec = seq.spec();
    let (name, set) = match a.exact_m {
        Some(m) => (format!("{m}*A"), subsums_exact(&seq, m)?),
        None => ("S_A".to_string(), subsums_all(&seq)),
    };
    let elements: Vec<Value> = match a.out {
        Dump::Index => set.iter().map(|x| json!(x)).collect(),
        Dump::Coords => set.iter().map(|x| coords(spec, x)).collect(),
    };
    let params = json!({ "exact_m": a.exact_m, "out": format!("{:?}", a.out).to_lowercase() });
    let mut r = Report::new("sumset", Some(spec), params, json!({ "set": name, "size": set.len(), "elements": elements }));
    r.claim(format!("|{name}|"), set.len(), Status::Exact);
    r.line(format!(
        "{name} = {{{}}}",
        elements.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
    ));
    Ok(r)
}

fn check(a: &CheckArgs) -> Result<Report> {
    let seq = load(&a.file)?;
    let zsf = is_zero_sum_free(&seq);
    let incomplete = is_incomplete(&seq);
    let mut result = json!({ "length": seq.len(), "zero_sum_free": zsf, "incomplete": incomplete });
    let mut r = Report::new("check", Some(seq.spec()), json!({ "m": a.m }), Value::Null);
    r.claim("zero-sum-free", zsf, Status::Exact);
    r.claim("incomplete", incomplete, Status::Exact);
    if let Some(m) = a.m {
        let mzsf = is_m_zero_sum_free(&seq, m)?;
        let minc = is_m_incomplete(&seq, m)?;
        result["m_zero_sum_free"] = json!(mzsf);
        result["m_incomplete"] = json!(minc);
        r.claim(format!("{m}-zero-sum-free"), mzsf, Status::Exact);
        r.claim(format!("{m}-incomplete"), minc, Status::Exact);
    }
    r.envelope.result = result;
    Ok(r)
}

fn decompose_cmd(a: &DecomposeArgs, seed: u64) -> Result<Report> {
    let seq = load(&a.file)?;
    let spec = seq.spec();
    let params = DecompositionParams {
        alpha: a.alpha,
        beta: a.beta,
        epsilon: a.epsilon,
        delta: a.delta,
        w: a.w,
        seed,
        ..DecompositionParams::default()
    };
    let param_json = json!({
        "alpha": a.alpha, "beta": a.beta, "epsilon": a.epsilon, "delta": a.delta, "W": a.w, "seed": seed,
    });
    let outcome = decompose(&seq, &params)?;
    let mut r = Report::new("decompose", Some(spec), param_json, Value::Null);
    match outcome {
        DecomposeOutcome::Decomposed { decomposition: dec, route, report, diagnostics } => {
            let clauses: Vec<Value> = report
                .clauses
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect();
            let status = if report.passed() { Status::Exact } else { Status::Inconclusive };
            r.claim("outcome", "decomposition", status);
            r.claim("dim H", dec.h.dim(), status);
            r.claim("|A_0|", dec.a0.len(), status);
            r.claim("blocks", dec.blocks.len(), status);
            r.claim("block length", dec.block_len(), status);
            r.claim("m", dec.m_witness, status);
            for c in &report.clauses {
                r.line(format!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail));
            }
            r.envelope.result = json!({
                "outcome": "decomposition",
                "route": route.as_str(),
                "epsilon": dec.epsilon,
                "block_length": dec.block_len(),
                "h": subspace_json(&dec.h),
                "m_witness": dec.m_witness,
                "translate_witness": dec.translate_witness.coords(),
                "a0": sequence_json(&dec.a0),
                "blocks": dec.blocks.iter().map(sequence_json).collect::<Vec<_>>(),
                "verification": clauses,
                "notes": diagnostics.notes,
            });
            if !report.passed() {
                return Err(Error::Internal("decomposition failed re-verification".into()));
            }
        }
        DecomposeOutcome::Complete(w) => {
            r.claim("outcome", "complete", Status::Exact);
            r.claim("m", w.m, Status::Exact);
            r.line(format!("{}*A is the whole group", w.m));
            r.envelope.result = json!({ "outcome": "complete", "m": w.m });
        }
        DecomposeOutcome::Inconclusive(d) => {
            r.claim("outcome", "inconclusive", Status::Inconclusive);
            for n in &d.notes {
                r.line(n.clone());
            }
            r.envelope.result = json!({
                "outcome": "inconclusive",
                "smallest_exceptional": d.smallest_exceptional,
                "exceptional_bound": d.exceptional_bound,
                "notes": d.notes,
            });
        }
    }
    Ok(r)
}

fn write_checkpoint(path: &Path, ck: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, ck.to_text())?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn constant(a: &SearchArgs, mode: SearchMode, threads: usize) -> Result<Report> {
    let spec = GroupSpec::new(a.p, a.d)?;
    let mut config = SearchConfig::for_spec(spec);
    config.budget = a.budget;
    config.threads = threads;
    if let Some(s) = a.symmetry {
        config.symmetry = s;
    }
    let resume = match &a.resume {
        Some(path) => {
            let ck = Checkpoint::parse(&std::fs::read_to_string(path)?)?;
            if ck.spec != spec || ck.mode != mode {
                return Err(Error::Checkpoint(format!(
                    "checkpoint is for F_{}^{} ({}), the command asks for F_{}^{} ({})",
                    ck.spec.p(),
                    ck.spec.d(),
                    ck.mode.as_str(),
                    spec.p(),
                    spec.d(),
                    mode.as_str()
                )));
            }
            config.symmetry = ck.symmetry;
            config.order = ck.order.clone();
            Some(ck)
        }
        None => None,
    };
    let stop = Arc::new(AtomicBool::new(false));
    if threads <= 1 {
        let flag = stop.clone();
        // a second handler cannot be installed; the search then just runs uninterruptible
        let _ = ctrlc::set_handler(move || flag.store(true, Ordering::Relaxed));
        config.stop = Some(stop.clone());
    }
    let mut write = |ck: &Checkpoint| match &a.checkpoint {
        Some(path) => write_checkpoint(path, ck),
        None => Ok(()),
    };
    let sink: Option<&mut zslab::constants::CheckpointSink<'_>> =
        if a.checkpoint.is_some() { Some(&mut write) } else { None };
    let result = match mode {
        SearchMode::Set => olson_constant(spec, &config, resume.as_ref(), sink)?,
        SearchMode::Sequence => davenport_constant(spec, &config, resume.as_ref(), sink)?,
    };
    let name = match mode {
        SearchMode::Set => "olson",
        SearchMode::Sequence => "davenport",
    };
    let params = json!({
        "budget": a.budget,
        "threads": threads,
        "symmetry": config.symmetry,
        "resumed": resume.is_some(),
    });
    let mut r = Report::new(name, Some(spec), params, constant_json(&result));
    let label = if mode == SearchMode::Set { "OL" } else { "D" };
    constant_claims(&mut r, label, &result);
    r.envelope.nodes_explored = Some(result.nodes_explored);
    r.cut_short = !result.exhausted;
    if r.cut_short && stop.load(Ordering::Relaxed) {
        r.line("interrupted");
    }
    Ok(r)
}

fn constant_json(c: &ConstantResult) -> Value {
    json!({
        "mode": c.mode,
        "exact": c.exhausted,
        "lower": c.lower,
        "upper": c.upper,
        "witness": c.witness.iter().map(|&x| coords(c.spec, x)).collect::<Vec<_>>(),
        "nodes_explored": c.nodes_explored,
        "references": c.references,
    })
}

fn constant_claims(r: &mut Report, label: &str, c: &ConstantResult) {
    let group = format!("{label}(F_{}^{})", c.spec.p(), c.spec.d());
    match c.value() {
        Some(v) => {
            r.claim(group.clone(), v, Status::Exact);
        }
        None => {
            r.claim(format!("{group} lower"), c.lower, Status::Bound);
            if let Some(u) = c.upper {
                r.claim(format!("{group} upper"), u, Status::Bound);
            }
        }
    }
    for reference in &c.references {
        let verdict = match reference.consistent {
            Some(true) => "consistent",
            Some(false) => "differs",
            None => "not compared",
        };
        r.line(format!("{group} vs {} = {}: {verdict}", reference.label, reference.value));
    }
}

fn line_olson(p: u32) -> Result<usize> {
    let line = GroupSpec::new(p as u64, 1)?;
    let out = olson_constant(line, &SearchConfig::for_spec(line), None, None)?;
    out.value().ok_or_else(|| Error::Internal("unbudgeted search did not finish".into()))
}

fn construct(a: &ConstructArgs) -> Result<Report> {
    if let Some(d) = a.stacked {
        let lower_spec = GroupSpec::new(a.p as u64, d.saturating_sub(1).max(1))?;
        let lower_ol = olson_constant(lower_spec, &SearchConfig::for_spec(lower_spec), None, None)?;
        let lower = ElementSequence::from_indices(lower_spec, lower_ol.witness.iter().copied())?;
        let set = construct_stacked(a.p, d, &lower)?;
        let spec = set.spec();
        let expected = a.p as usize + lower.len() - 1;
        let mut r = Report::new(
            "extremal construct",
            Some(spec),
            json!({ "p": a.p, "stacked": d }),
            json!({
                "construction": "stacked",
                "size": set.len(),
                "expected_size": expected,
                "verified": true,
                "set": set.iter().map(|x| coords(spec, x)).collect::<Vec<_>>(),
            }),
        );
        r.claim("zero-sum-free", true, Status::Exact);
        r.claim("size", set.len(), Status::Exact);
        r.line(format!("p + OL(F_p^{}) - 2 = {expected}", d - 1));
        return Ok(r);
    }
    let variant = Variant::from_number(a.variant).expect("clap restricts the range");
    let ol_p = match a.ol_p {
        Some(v) => v,
        None => line_olson(a.p)?,
    };
    let c = construct_grt_config(a.p, variant, ol_p)?;
    let spec = GroupSpec::new(a.p as u64, 2)?;
    let mut r = Report::new(
        "extremal construct",
        Some(spec),
        json!({ "p": a.p, "variant": a.variant, "ol_p": ol_p }),
        json!({
            "construction": format!("variant {}", a.variant),
            "size": c.size,
            "expected_size": a.p as usize + ol_p - 2,
            "verified": c.verified,
            "default_choice_zero_sum_free": c.default_choice_zero_sum_free,
            "side_condition": c.side_condition,
            "set": c.set.iter().map(|&x| coords(spec, x)).collect::<Vec<_>>(),
            "deviations": c.deviations,
        }),
    );
    r.claim("zero-sum-free", c.verified, Status::Exact);
    r.claim("size", c.size, Status::Exact);
    for d in &c.deviations {
        r.line(format!("deviation: {d}"));
    }
    Ok(r)
}

fn classify(a: &ClassifyArgs) -> Result<Report> {
    let c = classify_max_zero_sum_free_f_p2(a.p, a.budget)?;
    let spec = GroupSpec::new(a.p as u64, 2)?;
    let status = if c.complete { Status::Exact } else { Status::Bound };
    let mut r = Report::new("extremal classify", Some(spec), json!({ "p": a.p, "budget": a.budget }), json!(c));
    r.claim("maximum size", c.max_size, status);
    r.claim("orbit count", c.classes.len(), status);
    r.claim("maximum sets", c.total_sets, status);
    for k in &c.classes {
        let pts: Vec<String> = k.representative.iter().map(|&x| spec.element_at(x).to_string()).collect();
        let matches = if k.matches.is_empty() {
            "no variant".to_string()
        } else {
            k.matches.iter().map(|v| format!("variant {v}")).collect::<Vec<_>>().join(", ")
        };
        r.line(format!("orbit of {} sets: {} ({matches})", k.orbit_size, pts.join(" ")));
    }
    for d in &c.deviations {
        r.line(format!("deviation: {d}"));
    }
    r.cut_short = !c.complete;
    Ok(r)
}

fn olson3(a: &Olson3Args) -> Result<Report> {
    let rep = olson3_experiment(a.p, a.gamma, a.budget)?;
    let spec = GroupSpec::new(a.p as u64, 3)?;
    let mut r = Report::new(
        "extremal olson3",
        Some(spec),
        json!({ "p": a.p, "gamma": a.gamma, "budget": a.budget }),
        json!({
            "plane": constant_json(&rep.plane),
            "space": constant_json(&rep.space),
            "stacked_size": rep.stacked_size,
            "theorem_bound": rep.theorem_bound,
            "conjectured": rep.conjectured,
            "within_bound": rep.within_bound,
            "matches_conjecture": rep.matches_conjecture,
        }),
    );
    constant_claims(&mut r, "OL", &rep.plane);
    constant_claims(&mut r, "OL", &rep.space);
    let row = |name: &str, v: String| format!("{name:<24} {v}");
    r.line(row("OL(F_p^3)", rep.space.value().map_or(format!(">= {}", rep.space.lower), |v| v.to_string())));
    r.line(row("(2+gamma)p", format!("{}", rep.theorem_bound)));
    r.line(row("p + OL(F_p^2) - 1", rep.conjectured.map_or("unknown".into(), |v| v.to_string())));
    r.line(row("stacked witness + 1", (rep.stacked_size + 1).to_string()));
    r.envelope.nodes_explored = Some(rep.plane.nodes_explored + rep.space.nodes_explored);
    r.cut_short = !(rep.plane.exhausted && rep.space.exhausted);
    Ok(r)
}
