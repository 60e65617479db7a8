//! Scenario files: pretty-printed JSON whose field order follows the struct
//! declarations, so `parse -> canonical_text` is a stable canonical form and
//! repeated round trips are byte-identical.

use std::fs;
use std::path::{Path, PathBuf};

use polytrack::ScenarioSpec;

use crate::{HarnessError, Result};

/// Parses and validates a scenario from its textual form.
pub fn parse_scenario(text: &str) -> Result<ScenarioSpec> {
    let scenario: ScenarioSpec =
        serde_json::from_str(text).map_err(|e| HarnessError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    scenario.validate()?;
    Ok(scenario)
}

/// Canonical textual form of a scenario.
pub fn canonical_text(scenario: &ScenarioSpec) -> String {
    let mut text = serde_json::to_string_pretty(scenario).expect("scenario serializes");
    text.push('\n');
    text
}

pub fn load_scenario(path: &Path) -> Result<ScenarioSpec> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenario(&text)
}

/// Loads every `.json` file in a directory, sorted by file name. Files that
/// fail to parse are returned separately so a batch never aborts.
pub fn load_scenario_dir(
    dir: &Path,
) -> Result<(Vec<(String, ScenarioSpec)>, Vec<(String, String)>)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|source| HarnessError::Io {
            path: dir.to_path_buf(),
            source,
        })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    let mut scenarios = Vec::new();
    let mut failures = Vec::new();
    for path in paths {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        match load_scenario(&path) {
            Ok(scenario) => scenarios.push((name, scenario)),
            Err(err) => failures.push((name, err.to_string())),
        }
    }
    Ok((scenarios, failures))
}
