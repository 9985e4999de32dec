//! Graph collections an experiment runs over.

use std::fs;
use std::path::{Path, PathBuf};

use spectral_sens_core::edgelist::{from_edge_list, from_labeled_edge_list};
use spectral_sens_core::generate::gen_sbm;
use spectral_sens_core::rng::mix_seed;
use spectral_sens_core::{Graph, Partition};

use crate::error::{CliError, Result};

/// Extensions picked up from an edge-list directory.
pub const EDGE_LIST_EXTENSIONS: [&str; 3] = ["edges", "edgelist", "txt"];

/// A grid of stochastic block models, one graph per `(within, cross)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SbmGrid {
    pub blocks: usize,
    pub size: usize,
    pub within: Vec<f64>,
    pub cross: Vec<f64>,
}

impl SbmGrid {
    /// `blocks` blocks over 100 vertices, within-probabilities
    /// `0.3, 0.4, …, 0.9` and cross-probabilities `0.01, 0.02, …, 0.1`.
    /// The reduced grid keeps every other within-probability.
    pub fn standard(blocks: usize, reduced: bool) -> Self {
        let step = if reduced { 2 } else { 1 };
        SbmGrid {
            blocks,
            size: 100 / blocks.max(1),
            within: (3..=9).step_by(step).map(|i| i as f64 / 10.0).collect(),
            cross: (1..=10).map(|j| j as f64 / 100.0).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.within.len() * self.cross.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DatasetSpec {
    Sbm(SbmGrid),
    /// Every file in `dir` with an extension in [`EDGE_LIST_EXTENSIONS`].
    Directory {
        dir: PathBuf,
        relabel: bool,
    },
    File {
        path: PathBuf,
        relabel: bool,
    },
}

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
    pub planted: Option<Partition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadError {
    pub name: String,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub graphs: Vec<NamedGraph>,
    /// Inputs that could not be read or parsed; loading continues past them.
    pub errors: Vec<LoadError>,
}

/// Graph `i` of an SBM grid (row-major over `within × cross`) uses seed
/// `mix_seed(seed, i)`.
pub fn load(spec: &DatasetSpec, seed: u64) -> Result<Dataset> {
    match spec {
        DatasetSpec::Sbm(grid) => sbm_grid(grid, seed),
        DatasetSpec::Directory { dir, relabel } => directory(dir, *relabel),
        DatasetSpec::File { path, relabel } => {
            let graph = read_graph(path, *relabel)?;
            Ok(Dataset {
                graphs: vec![NamedGraph {
                    name: stem(path),
                    graph,
                    planted: None,
                }],
                errors: Vec::new(),
            })
        }
    }
}

fn sbm_grid(grid: &SbmGrid, seed: u64) -> Result<Dataset> {
    let mut graphs = Vec::with_capacity(grid.len());
    for (i, (&p, &q)) in grid
        .within
        .iter()
        .flat_map(|p| grid.cross.iter().map(move |q| (p, q)))
        .enumerate()
    {
        let sbm = gen_sbm(grid.blocks, grid.size, p, q, mix_seed(seed, i as u64))?;
        graphs.push(NamedGraph {
            name: format!("sbm{}-p{p:.2}-q{q:.3}", grid.blocks),
            graph: sbm.graph,
            planted: Some(sbm.planted),
        });
    }
    Ok(Dataset {
        graphs,
        errors: Vec::new(),
    })
}

fn directory(dir: &Path, relabel: bool) -> Result<Dataset> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::io(dir, e))?.path();
        let wanted = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| EDGE_LIST_EXTENSIONS.contains(&e));
        if wanted && path.is_file() {
            paths.push(path);
        }
    }
    paths.sort();
    let mut out = Dataset::default();
    for path in paths {
        match read_graph(&path, relabel) {
            Ok(graph) => out.graphs.push(NamedGraph {
                name: stem(&path),
                graph,
                planted: None,
            }),
            Err(e) => out.errors.push(LoadError {
                name: stem(&path),
                message: e.to_string(),
            }),
        }
    }
    Ok(out)
}

pub fn read_graph(path: &Path, relabel: bool) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(if relabel {
        from_labeled_edge_list(&text)?.0
    } else {
        from_edge_list(&text)?
    })
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}
