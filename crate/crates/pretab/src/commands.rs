//! The subcommands, as functions from configuration and input to an exit
//! code and printable output.

use crate::config::{OutputFormat, RunConfig};
use crate::corpus::{self, Suite};
use crate::format::{read_substitution, substitution_json, write_char_model, write_countermodel};
use pretab_core::decision::{member_with, Verdict};
use pretab_core::finitary::{build_char_model, complete_set_with, to_rnf_with, FinitaryError};
use pretab_core::projective::{projective_unifier, ProjectiveError, ProjectiveResult};
use pretab_core::unify::{ground_unifiers_with, more_general, GeneralityVerdict};
use pretab_core::{parse, Formula, Logic, Substitution};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::Path;

/// Success, or a positive verdict.
pub const EXIT_OK: i32 = 0;
/// Refuted, not unifiable, not within budget, or a failing corpus case.
pub const EXIT_NEGATIVE: i32 = 1;
/// A membership or search budget ran out.
pub const EXIT_BUDGET: i32 = 2;
/// Unparseable formula or invalid arguments.
pub const EXIT_INPUT: i32 = 3;
/// IO and other runtime failures.
pub const EXIT_FAILURE: i32 = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Outcome {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(code: i32, message: impl Into<String>) -> Outcome {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn parse_input(text: &str) -> Result<Formula, Outcome> {
    parse(text).map_err(|e| Outcome::err(EXIT_INPUT, format!("error: cannot parse formula: {e}")))
}

fn require_logic(config: &RunConfig) -> Result<Logic, Outcome> {
    config.logic.ok_or_else(|| {
        Outcome::err(
            EXIT_INPUT,
            "error: no logic given (use --logic or `logic =` in the config file)",
        )
    })
}

fn render(config: &RunConfig, value: &Value, human: String) -> String {
    match config.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
            s.push('\n');
            s
        }
        OutputFormat::Human => human,
    }
}

fn substitution_lines(out: &mut String, sigma: &Substitution) {
    for (x, f) in sigma.iter() {
        let _ = writeln!(out, "    {x} := {f}");
    }
}

pub fn check(config: &RunConfig, text: &str) -> Outcome {
    let (logic, phi) = match require_logic(config).and_then(|l| Ok((l, parse_input(text)?))) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let v = member_with(logic, &phi, &config.member());
    let mut value = json!({
        "logic": logic.name(),
        "formula": phi.to_string(),
        "bound": v.bound_used,
        "checked_up_to": v.checked_up_to,
    });
    let (code, human) = match &v.verdict {
        Verdict::Valid => {
            value["verdict"] = json!("valid");
            (
                EXIT_OK,
                format!("Valid in {logic} (frames up to m = {})\n", v.checked_up_to),
            )
        }
        Verdict::Refuted { size, witness } => {
            value["verdict"] = json!("refuted");
            value["size"] = json!(size);
            value["world"] = json!(witness.world);
            if let Some(path) = &config.dump_countermodel {
                if let Err(e) = std::fs::write(path, write_countermodel(witness)) {
                    return Outcome::err(
                        EXIT_FAILURE,
                        format!("error: writing {}: {e}", path.display()),
                    );
                }
                value["countermodel"] = json!(path.display().to_string());
            }
            (
                EXIT_NEGATIVE,
                format!(
                    "Refuted in {logic}: fails at world {} of the m = {size} frame ({} worlds)\n",
                    witness.world,
                    witness.model.frame().size()
                ),
            )
        }
        Verdict::BudgetExceeded { size } => {
            value["verdict"] = json!("budget-exceeded");
            value["size"] = json!(size);
            (
                EXIT_BUDGET,
                format!("Budget exceeded in {logic} while checking the m = {size} frame\n"),
            )
        }
    };
    Outcome::out(code, render(config, &value, human))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnifyMode {
    Ground,
    Best,
    Projective,
}

impl std::str::FromStr for UnifyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ground" => Ok(UnifyMode::Ground),
            "best" => Ok(UnifyMode::Best),
            "projective" => Ok(UnifyMode::Projective),
            other => Err(format!(
                "unknown mode `{other}`; expected ground, best or projective"
            )),
        }
    }
}

pub fn unify(config: &RunConfig, text: &str, mode: UnifyMode) -> Outcome {
    let (logic, phi) = match require_logic(config).and_then(|l| Ok((l, parse_input(text)?))) {
        Ok(v) => v,
        Err(o) => return o,
    };
    match mode {
        UnifyMode::Ground => unify_ground(config, logic, &phi),
        UnifyMode::Projective => unify_projective(config, logic, &phi, "projective"),
        UnifyMode::Best if logic.is_unitary() => unify_projective(config, logic, &phi, "best"),
        UnifyMode::Best => unify_complete(config, logic, &phi, "best"),
    }
}

fn header(logic: Logic, phi: &Formula, mode: &str) -> Value {
    json!({ "logic": logic.name(), "formula": phi.to_string(), "mode": mode })
}

fn not_unifiable(config: &RunConfig, mut value: Value, kind: &str, logic: Logic) -> Outcome {
    value["unifiable"] = json!(false);
    value["type"] = json!(kind);
    value["cardinality"] = json!(0);
    value["unifiers"] = json!([]);
    let human = format!("Not unifiable in {logic}\n");
    Outcome::out(EXIT_NEGATIVE, render(config, &value, human))
}

fn unify_ground(config: &RunConfig, logic: Logic, phi: &Formula) -> Outcome {
    let mut value = header(logic, phi, "ground");
    let gus = match ground_unifiers_with(logic, phi, &config.member()) {
        Ok(g) => g,
        Err(e) => return Outcome::err(EXIT_BUDGET, format!("error: {e}")),
    };
    if gus.is_empty() {
        return not_unifiable(config, value, "ground", logic);
    }
    let subs: Vec<Substitution> = gus.iter().map(|g| g.to_substitution()).collect();
    value["unifiable"] = json!(true);
    value["type"] = json!("ground");
    value["cardinality"] = json!(subs.len());
    value["certified"] = json!(true);
    value["unifiers"] = subs.iter().map(substitution_json).collect();
    let mut human = format!("Unifiable in {logic}: {} ground unifier(s)\n", gus.len());
    for g in &gus {
        let _ = writeln!(human, "  {g}");
    }
    Outcome::out(EXIT_OK, render(config, &value, human))
}

fn projective_json(value: &mut Value, r: &ProjectiveResult) {
    value["unifiable"] = json!(true);
    value["type"] = json!("mgu");
    value["cardinality"] = json!(1);
    value["unifiers"] = json!([substitution_json(&r.unifier)]);
    value["certified"] = json!(r.certified);
    value["unifies"] = json!(r.unifies);
    value["checks"] = r
        .per_variable_checks
        .iter()
        .map(|(x, ok)| json!({ "var": x, "holds": ok }))
        .collect();
    value["construction"] = json!(r.construction.to_string());
}

fn unify_projective(config: &RunConfig, logic: Logic, phi: &Formula, mode: &str) -> Outcome {
    let mut value = header(logic, phi, mode);
    match projective_unifier(logic, phi, &config.member()) {
        Ok(r) => {
            projective_json(&mut value, &r);
            let status = if r.certified {
                "certified"
            } else {
                "NOT certified"
            };
            let mut human = format!(
                "Unifiable in {logic}: projective unifier ({status}, {})\n",
                r.construction
            );
            substitution_lines(&mut human, &r.unifier);
            for (x, ok) in &r.per_variable_checks {
                let _ = writeln!(
                    human,
                    "  []phi -> ({x} <-> sigma({x})): {}",
                    if *ok { "holds" } else { "fails" }
                );
            }
            Outcome::out(EXIT_OK, render(config, &value, human))
        }
        Err(ProjectiveError::NotUnifiable) => not_unifiable(config, value, "mgu", logic),
        Err(e @ ProjectiveError::Budget { .. }) => Outcome::err(EXIT_BUDGET, format!("error: {e}")),
    }
}

fn finitary_failure(e: FinitaryError) -> Outcome {
    let code = match e {
        FinitaryError::Logic(_) => EXIT_INPUT,
        FinitaryError::Rnf(_) | FinitaryError::SubsetCap { .. } | FinitaryError::Budget(_) => {
            EXIT_BUDGET
        }
        FinitaryError::EmptyCarrier | FinitaryError::NoCertifiedCandidate => EXIT_FAILURE,
    };
    Outcome::err(code, format!("error: {e}"))
}

fn unify_complete(config: &RunConfig, logic: Logic, phi: &Formula, mode: &str) -> Outcome {
    let mut value = header(logic, phi, mode);
    let cs = match complete_set_with(phi, logic, &config.caps()) {
        Ok(cs) => cs,
        Err(e) => return finitary_failure(e),
    };
    if cs.unifiers.is_empty() {
        return not_unifiable(config, value, "complete-set", logic);
    }
    value["unifiable"] = json!(true);
    value["type"] = json!("complete-set");
    value["cardinality"] = json!(cs.unifiers.len());
    value["certified"] = json!(true);
    value["unifiers"] = cs.unifiers.iter().map(substitution_json).collect();
    value["rnf_disjuncts"] = json!(cs.rnf_disjuncts);
    value["log"] = cs
        .log
        .iter()
        .map(|l| {
            let (certified, outcome) = match &l.outcome {
                Ok(c) => (true, c.to_string()),
                Err(r) => (false, r.to_string()),
            };
            json!({ "carrier": l.carrier, "certified": certified, "outcome": outcome })
        })
        .collect();
    let mut human = format!(
        "Unifiable in {logic}: complete set of {} (from {} maximal disjunct model(s))\n",
        cs.unifiers.len(),
        cs.log.len()
    );
    for (i, sigma) in cs.unifiers.iter().enumerate() {
        let _ = writeln!(human, "  {}.", i + 1);
        substitution_lines(&mut human, sigma);
    }
    Outcome::out(EXIT_OK, render(config, &value, human))
}

pub fn complete_set(config: &RunConfig, text: &str) -> Outcome {
    let logic = match require_logic(config) {
        Ok(l) => l,
        Err(o) => return o,
    };
    if logic.is_unitary() {
        return Outcome::err(
            EXIT_INPUT,
            format!("error: complete-set handles PM2 and PM3; {logic} has mgus (use unify)"),
        );
    }
    match parse_input(text) {
        Ok(phi) => unify_complete(config, logic, &phi, "complete-set"),
        Err(o) => o,
    }
}

pub fn rnf(config: &RunConfig, text: &str) -> Outcome {
    let phi = match parse_input(text) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let r = match to_rnf_with(&phi, config.max_disjuncts) {
        Ok(r) => r,
        Err(e) => return Outcome::err(EXIT_BUDGET, format!("error: {e}")),
    };
    let definitions: serde_json::Map<String, Value> = r
        .fresh_var_map()
        .iter()
        .map(|(v, f)| (v.clone(), json!(f.to_string())))
        .collect();
    let vars = r.var_formulas();
    let value = json!({
        "formula": phi.to_string(),
        "vars": r.vars(),
        "definitions": definitions,
        "disjuncts": r.disjuncts().iter().map(|d| d.to_formula(&vars).to_string()).collect::<Vec<_>>(),
    });
    let mut human = format!("{r}\n");
    for (v, f) in r.fresh_var_map() {
        let _ = writeln!(human, "where {v} := {f}");
    }
    Outcome::out(EXIT_OK, render(config, &value, human))
}

pub fn charmodel(config: &RunConfig, n: usize, layers: usize, dump: Option<&Path>) -> Outcome {
    let m = match build_char_model(n, layers) {
        Ok(m) => m,
        Err(e) => return Outcome::err(EXIT_INPUT, format!("error: {e}")),
    };
    let per_layer: Vec<usize> = (1..=layers)
        .map(|l| m.clusters().iter().filter(|c| c.layer == l).count())
        .collect();
    let text = write_char_model(&m);
    if let Some(path) = dump {
        if let Err(e) = std::fs::write(path, &text) {
            return Outcome::err(
                EXIT_FAILURE,
                format!("error: writing {}: {e}", path.display()),
            );
        }
    }
    let value = json!({
        "n": n,
        "layers": layers,
        "clusters": m.clusters().len(),
        "per_layer": per_layer,
        "dump": dump.map(|p| p.display().to_string()),
    });
    let counts: Vec<String> = per_layer
        .iter()
        .enumerate()
        .map(|(i, c)| format!("layer {}: {c}", i + 1))
        .collect();
    let mut human = format!(
        "T_{n}^{layers}: {} clusters ({})\n",
        m.clusters().len(),
        counts.join(", ")
    );
    if dump.is_none() {
        human.push_str(&text);
    }
    Outcome::out(EXIT_OK, render(config, &value, human))
}

pub fn corpus(config: &RunConfig, suite: Option<&str>, seed: u64) -> Outcome {
    let suites: Vec<Suite> = match suite {
        None | Some("all") => Suite::ALL.to_vec(),
        Some(name) => match name.parse() {
            Ok(s) => vec![s],
            Err(e) => return Outcome::err(EXIT_INPUT, format!("error: {e}")),
        },
    };
    let report = corpus::run(&suites, seed);
    let code = if report.failures() == 0 {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let value = json!({
        "seed": seed,
        "passed": report.cases.len() - report.failures(),
        "failed": report.failures(),
        "cases": report.cases.iter().map(|c| json!({
            "suite": c.suite.name(),
            "case": c.case,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    });
    Outcome::out(code, render(config, &value, report.render()))
}

fn read_json_substitution(path: &Path) -> Result<Substitution, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Outcome::err(
            EXIT_FAILURE,
            format!("error: reading {}: {e}", path.display()),
        )
    })?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Outcome::err(EXIT_INPUT, format!("error: {}: {e}", path.display())))?;
    read_substitution(&value)
        .map_err(|e| Outcome::err(EXIT_INPUT, format!("error: {}: {e}", path.display())))
}

/// Whether the substitution in `general` is at least as general as the one
/// in `specific`, as unifiers of `text`.
pub fn compare(config: &RunConfig, text: &str, general: &Path, specific: &Path) -> Outcome {
    let inputs = require_logic(config).and_then(|l| {
        Ok((
            l,
            parse_input(text)?,
            read_json_substitution(general)?,
            read_json_substitution(specific)?,
        ))
    });
    let (logic, phi, g, s) = match inputs {
        Ok(v) => v,
        Err(o) => return o,
    };
    let vars = phi.vars();
    let (g, s) = (g.padded(&vars), s.padded(&vars));
    let budget = config.budget();
    let mut value =
        json!({ "logic": logic.name(), "formula": phi.to_string(), "budget": budget.to_string() });
    match more_general(logic, &g, &s, &phi, &budget) {
        GeneralityVerdict::MoreGeneral(w) => {
            value["verdict"] = json!("more-general");
            value["witness"] = substitution_json(&w);
            let mut human = "More general: specific = witness after general\n".to_string();
            substitution_lines(&mut human, &w);
            Outcome::out(EXIT_OK, render(config, &value, human))
        }
        GeneralityVerdict::NotWithinBudget(b) => {
            value["verdict"] = json!("not-within-budget");
            let human = format!("No witness found within budget ({b})\n");
            Outcome::out(EXIT_NEGATIVE, render(config, &value, human))
        }
    }
}
