use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;
use std::sync::Arc;

use contextalg_core::algebra::{cf_leq, AlgebraElement, Basis, BasisOptions, GeneralLanguage};
use contextalg_core::entailment::{degree_exact, degree_mc, Mode};
use contextalg_core::logic::{down_set, entails, equivalent, parse_formula};
use contextalg_core::projections::member_pairs;
use contextalg_core::semantics::{
    build_aspect_language, build_gamma_language, sentence_operator, sentence_vector, words_of,
    OperatorLanguage,
};
use contextalg_core::{check_identities, projection_of, Lexicon, McOptions, Universe};
use serde_json::json;

use crate::{input, AlgebraAction, CliError, Report, Source};

pub fn check(universe: &Path, pairs: Option<&Path>) -> Result<Report, CliError> {
    let universe = input::universe(universe)?;
    let pairs = match pairs {
        Some(p) => input::pairs(p)?,
        None => member_pairs(&universe),
    };
    let report = check_identities(&universe, &pairs)?;

    let mut text = format!(
        "universe {} ({} members, {} pairs)\nconjunction exact: {}\ntop exact: {}\n",
        universe.hash(),
        universe.len(),
        pairs.len(),
        report.conj_exact,
        report.top_exact
    );
    for (u, defects) in report.neg_defects.iter().filter(|(_, d)| !d.is_empty()) {
        let _ = writeln!(text, "negation defects for {u}: {}", members(&universe, defects));
    }
    for d in report.disj_defects.iter().filter(|d| !d.defects.is_empty()) {
        let _ = writeln!(
            text,
            "disjunction defects for ({}, {}): {}",
            d.u,
            d.v,
            members(&universe, &d.defects)
        );
    }
    Ok(Report {
        json: serde_json::to_value(&report).map_err(|e| CliError::Input(e.to_string()))?,
        text,
        consistent: report.exact_identities_hold(),
    })
}

fn members<'a>(universe: &Universe, idx: impl IntoIterator<Item = &'a usize>) -> String {
    idx.into_iter()
        .map(|i| universe.formulas()[*i].to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn entail(universe: &Path, u: &str, v: &str) -> Result<Report, CliError> {
    let universe = input::universe(universe)?;
    let (u, v) = (parse_formula(u)?, parse_formula(v)?);
    // the order only mirrors entailment for formulas the universe can name
    let mut named = false;
    for f in universe.formulas() {
        named |= equivalent(f, &u, universe.atoms())?;
    }
    if !named {
        return Err(CliError::Input(format!(
            "`{u}` is not equivalent to any member of the universe"
        )));
    }
    let ent = entails(&u, &v, universe.atoms())?;
    let op_leq = projection_of(&u, &universe)?.leq(&projection_of(&v, &universe)?)?;
    let down_u = down_set(&u, &universe)?.len();
    let down_v = down_set(&v, &universe)?.len();
    Ok(Report {
        json: json!({
            "u": u.to_string(),
            "v": v.to_string(),
            "entails": ent,
            "op_leq": op_leq,
            "down_set_u": down_u,
            "down_set_v": down_v,
        }),
        text: format!(
            "{u} |- {v}: {ent}\nP_u <= P_v: {op_leq}\n|down({u})| = {down_u}, |down({v})| = {down_v}\n"
        ),
        consistent: ent == op_leq,
    })
}

fn operator_language(
    universe: &Arc<Universe>,
    lexicon: &Lexicon,
    source: Source<'_>,
) -> Result<Arc<OperatorLanguage>, CliError> {
    let language = match source {
        Source::Interp(path) => {
            let interp = input::interpretation(path, universe.clone())?;
            lexicon.check_namespaces(&interp)?;
            build_aspect_language(&interp)?
        }
        Source::Gamma(path) => build_gamma_language(&input::gamma(path)?, universe)?.language,
    };
    Ok(Arc::new(language))
}

fn sentence(text: &str) -> Result<Vec<String>, CliError> {
    let words = words_of(text);
    if words.is_empty() {
        return Err(CliError::Input("empty sentence".into()));
    }
    Ok(words)
}

pub fn compose(
    universe: &Path,
    lexicon: &Path,
    source: Source<'_>,
    text: &str,
) -> Result<Report, CliError> {
    let universe = input::universe(universe)?;
    let lexicon = input::lexicon(lexicon)?;
    let language = operator_language(&universe, &lexicon, source)?;
    let x = sentence_vector(&sentence(text)?, &lexicon, &language)?;
    let op = sentence_operator(&x);

    let mut out = format!("{text}\n");
    for (f, d) in universe.formulas().iter().zip(op.diag()) {
        if *d != 0.0 {
            let _ = writeln!(out, "  {d:>10.6}  {f}");
        }
    }
    Ok(Report {
        json: serde_json::to_value(op.to_json()).map_err(|e| CliError::Input(e.to_string()))?,
        text: out,
        consistent: true,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn degree(
    universe: &Path,
    lexicon: &Path,
    source: Source<'_>,
    dist: Option<&Path>,
    mode: Mode,
    mc: McOptions,
    x: &str,
    y: &str,
) -> Result<Report, CliError> {
    let universe = input::universe(universe)?;
    let lexicon = input::lexicon(lexicon)?;
    let language = operator_language(&universe, &lexicon, source)?;
    let dist = input::distribution(dist, universe.clone())?;
    let (xs, ys) = (sentence(x)?, sentence(y)?);
    let result = match mode {
        Mode::Exact => degree_exact(&xs, &ys, &lexicon, &language, &dist)?,
        Mode::Mc => degree_mc(&xs, &ys, &lexicon, &language, &dist, mc)?,
    };
    let mut text = format!("degree({x} |= {y}) = {:.6}\n", result.degree);
    if let Some(se) = result.stderr {
        let _ = writeln!(text, "stderr {se:.6} over {} samples", mc.samples);
    }
    Ok(Report {
        json: serde_json::to_value(&result).map_err(|e| CliError::Input(e.to_string()))?,
        text,
        consistent: true,
    })
}

pub fn algebra(path: &Path, tol: Option<f64>, action: &AlgebraAction) -> Result<Report, CliError> {
    let language = input::language(path)?;
    let alphabet = language.alphabet();
    let mut options = BasisOptions::default();
    if let Some(tol) = tol {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Input(format!("--tol must be positive, got {tol}")));
        }
        options.pivot_tol = tol;
    }
    match action {
        AlgebraAction::Info => {
            let strings = language.enumerate_nonzero_strings();
            let basis = Basis::build(language.clone(), &strings, options)?;
            let rendered: Vec<String> = basis.strings().iter().map(|s| alphabet.render(s)).collect();
            let text = format!(
                "{} strings, dimension {}\nbasis: {}\n",
                strings.len(),
                basis.len(),
                rendered.iter().map(|s| format!("[{s}]")).collect::<Vec<_>>().join(" ")
            );
            Ok(Report {
                json: json!({
                    "strings": strings.len(),
                    "dimension": basis.len(),
                    "basis": rendered,
                }),
                text,
                consistent: true,
            })
        }
        AlgebraAction::Mul { x, y } => {
            let p = element(&language, x)?.multiply(&element(&language, y)?)?;
            let coeffs: BTreeMap<String, f64> =
                p.coeffs().iter().map(|(s, v)| (alphabet.render(s), *v)).collect();
            let support: Vec<[String; 2]> = p
                .function()
                .support()
                .map(|c| [alphabet.render(&c.left), alphabet.render(&c.right)])
                .collect();
            let mut text = String::new();
            for (s, v) in &coeffs {
                let _ = writeln!(text, "{v} [{s}]");
            }
            let _ = writeln!(text, "support: {} contexts", support.len());
            Ok(Report {
                json: json!({ "coeffs": coeffs, "support": support }),
                text,
                consistent: true,
            })
        }
        AlgebraAction::Order { x, y } => {
            let (a, b) = (element(&language, x)?, element(&language, y)?);
            let leq = cf_leq(a.function(), b.function())?;
            let geq = cf_leq(b.function(), a.function())?;
            Ok(Report {
                json: json!({ "leq": leq, "geq": geq }),
                text: format!("[{x}] <= [{y}]: {leq}\n[{x}] >= [{y}]: {geq}\n"),
                consistent: true,
            })
        }
    }
}

fn element(
    language: &Arc<GeneralLanguage<f64>>,
    text: &str,
) -> Result<AlgebraElement<f64>, CliError> {
    let s = language.alphabet().parse(text)?;
    Ok(AlgebraElement::string(language.clone(), s)?)
}
