//! Input file formats: frames, partial maps, and premise lists.

use baire_core::formula::{parse, Formula};
use baire_core::maps::PartialMap;
use baire_core::Frame;
use serde::Deserialize;
use std::path::Path;

/// Frame file: named worlds, edges as name pairs, and an optional flag
/// (default on) to close the relation reflexively and transitively.
#[derive(Deserialize)]
pub struct FrameFile {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default = "default_auto_close")]
    pub auto_close: bool,
}

fn default_auto_close() -> bool {
    true
}

/// Map file: two frames and a graph of (source world, target world) pairs;
/// worlds missing from the graph are outside the domain.
#[derive(Deserialize)]
pub struct MapFile {
    pub source: FrameFile,
    pub target: FrameFile,
    pub graph: Vec<(String, String)>,
}

impl FrameFile {
    pub fn build(&self) -> Result<Frame, String> {
        Frame::build(&self.worlds, &self.edges, self.auto_close).map_err(|e| e.to_string())
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_frame(path: &Path) -> Result<Frame, String> {
    let text = read(path)?;
    let file: FrameFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    file.build().map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_map(path: &Path) -> Result<PartialMap, String> {
    let text = read(path)?;
    let file: MapFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let source = file.source.build().map_err(|e| format!("{}: source: {e}", path.display()))?;
    let target = file.target.build().map_err(|e| format!("{}: target: {e}", path.display()))?;
    let mut graph: Vec<Option<usize>> = vec![None; source.len()];
    for (x, y) in &file.graph {
        let xi = source
            .index_of(x)
            .ok_or_else(|| format!("{}: unknown source world {x:?}", path.display()))?;
        let yi = target
            .index_of(y)
            .ok_or_else(|| format!("{}: unknown target world {y:?}", path.display()))?;
        if graph[xi].is_some() {
            return Err(format!("{}: world {x:?} is mapped twice", path.display()));
        }
        graph[xi] = Some(yi);
    }
    PartialMap::new(source, target, graph).map_err(|e| format!("{}: {e}", path.display()))
}

/// Premises: one formula per line; blank lines and `#` comments are skipped.
pub fn load_gamma(path: &Path) -> Result<Vec<Formula>, String> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = parse(line)
            .map_err(|e| format!("{}:{}: {e}", path.display(), lineno + 1))?;
        out.push(f);
    }
    Ok(out)
}
