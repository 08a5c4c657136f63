use std::fs;
use std::path::Path;
use std::sync::Arc;

use contextalg_core::algebra::{GeneralLanguage, LanguageFile};
use contextalg_core::entailment::DistributionFile;
use contextalg_core::logic::{parse_formula, UniverseFile};
use contextalg_core::semantics::{GammaFile, InterpretationFile, LexiconFile};
use contextalg_core::{Distribution, Formula, Interpretation, Lexicon, Universe};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn context(path: &Path) -> impl Fn(contextalg_core::Error) -> CliError + '_ {
    move |e| CliError::from(e).within(path)
}

pub fn universe(path: &Path) -> Result<Arc<Universe>, CliError> {
    let file: UniverseFile = read_json(path)?;
    Ok(Arc::new(file.into_universe().map_err(context(path))?))
}

pub fn language(path: &Path) -> Result<Arc<GeneralLanguage<f64>>, CliError> {
    let file: LanguageFile = read_json(path)?;
    Ok(Arc::new(file.into_language().map_err(context(path))?))
}

pub fn lexicon(path: &Path) -> Result<Lexicon, CliError> {
    let file: LexiconFile = read_json(path)?;
    file.into_lexicon().map_err(context(path))
}

pub fn interpretation(path: &Path, universe: Arc<Universe>) -> Result<Interpretation, CliError> {
    let file: InterpretationFile = read_json(path)?;
    file.into_interpretation(universe).map_err(context(path))
}

pub fn gamma(path: &Path) -> Result<contextalg_core::semantics::GammaSpec, CliError> {
    let file: GammaFile = read_json(path)?;
    file.into_spec().map_err(context(path))
}

/// Uniform when no file is given.
pub fn distribution(path: Option<&Path>, universe: Arc<Universe>) -> Result<Distribution, CliError> {
    match path {
        Some(path) => {
            let file: DistributionFile = read_json(path)?;
            file.into_distribution(universe).map_err(context(path))
        }
        None => Ok(Distribution::uniform(universe)?),
    }
}

#[derive(Deserialize)]
struct PairsFile {
    pairs: Vec<(String, String)>,
}

/// `{"pairs": [["p", "q"], ..]}`
pub fn pairs(path: &Path) -> Result<Vec<(Formula, Formula)>, CliError> {
    let file: PairsFile = read_json(path)?;
    file.pairs
        .iter()
        .map(|(u, v)| Ok((parse_formula(u)?, parse_formula(v)?)))
        .collect::<contextalg_core::Result<Vec<_>>>()
        .map_err(context(path))
}
