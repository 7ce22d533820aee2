//! Manifold sources shared by all commands: Brieskorn exponents, raw
//! Seifert data, or a plumbing graph file.

use std::path::PathBuf;

use clap::Subcommand;
use serde_json::{json, Value};

use seifert_core::orbifold::{OrbLineBundle, OrbifoldSurface};
use seifert_core::plumbing::{seifert_from_star, PlumbingGraph};
use seifert_core::seifert::SeifertManifold;

use crate::commands::{plumbing_err, seifert_err};
use crate::report::CliError;

#[derive(Subcommand)]
pub enum Source {
    /// Brieskorn sphere with pairwise coprime exponents.
    Brieskorn { a1: u64, a2: u64, a3: u64 },
    /// Raw Seifert data over a genus-zero base: a background degree
    /// and repeated cone points.
    Seifert {
        /// Background degree of the defining circle bundle.
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        /// Cone point as "alpha:beta", before normalization; repeat
        /// the flag once per cone point.
        #[arg(long = "cone", value_name = "A:B", allow_hyphen_values = true)]
        cones: Vec<String>,
    },
    /// Star-shaped plumbing graph read from a text file.
    PlumbingFile { path: PathBuf },
}

/// A source resolved as far as every command needs: the graph level
/// (only for file input) and the manifold level.
pub struct Resolved {
    pub manifold: SeifertManifold,
    pub inputs: Value,
    pub warnings: Vec<String>,
}

impl Source {
    /// True for input that is already a plumbing graph.
    pub fn is_graph_file(&self) -> bool {
        matches!(self, Source::PlumbingFile { .. })
    }

    /// Resolve to a Seifert manifold, normalizing raw data and
    /// recognizing star plumbings.
    pub fn resolve(self) -> Result<Resolved, CliError> {
        match self {
            Source::Brieskorn { a1, a2, a3 } => {
                let manifold = SeifertManifold::brieskorn(a1, a2, a3).map_err(seifert_err)?;
                Ok(Resolved {
                    manifold,
                    inputs: json!({ "source": "brieskorn", "exponents": [a1, a2, a3] }),
                    warnings: Vec::new(),
                })
            }
            Source::Seifert { e, cones } => {
                let mut orders = Vec::with_capacity(cones.len());
                let mut betas = Vec::with_capacity(cones.len());
                for text in &cones {
                    let (alpha, beta) = parse_cone(text)?;
                    orders.push(alpha);
                    betas.push(beta);
                }
                let base = OrbifoldSurface::sphere(&orders)
                    .map_err(|err| CliError::Usage(err.to_string()))?;
                let bundle = OrbLineBundle::new(base, e, &betas);
                let mut warnings = Vec::new();
                let raw_normalized = *bundle.e() == num::BigInt::from(e)
                    && bundle
                        .beta()
                        .iter()
                        .zip(&betas)
                        .all(|(&b, &raw)| i64::try_from(b) == Ok(raw));
                if !raw_normalized {
                    warnings.push(format!(
                        "seifert data normalized to ({}; {})",
                        bundle.e(),
                        bundle
                            .base()
                            .cone_orders()
                            .iter()
                            .zip(bundle.beta())
                            .map(|(a, b)| format!("{a}:{b}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                }
                let manifold = SeifertManifold::from_bundle(bundle).map_err(seifert_err)?;
                Ok(Resolved {
                    manifold,
                    inputs: json!({ "source": "seifert", "e": e, "cones": cones }),
                    warnings,
                })
            }
            Source::PlumbingFile { path } => {
                let graph = load_graph(&path)?;
                let manifold = seifert_from_star(&graph).map_err(plumbing_err)?;
                Ok(Resolved {
                    manifold,
                    inputs: file_inputs(&path, &graph),
                    warnings: Vec::new(),
                })
            }
        }
    }
}

pub fn file_inputs(path: &PathBuf, graph: &PlumbingGraph) -> Value {
    json!({
        "source": "plumbing-file",
        "path": path.display().to_string(),
        "vertex_count": graph.vertex_count(),
        "edge_count": graph.edges().len(),
    })
}

pub fn load_graph(path: &PathBuf) -> Result<PlumbingGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Usage(format!("cannot read {}: {err}", path.display())))?;
    parse_graph(&text).map_err(CliError::Usage)
}

fn parse_cone(text: &str) -> Result<(u64, i64), CliError> {
    let bad = || CliError::Usage(format!("cone point must look like A:B, got \"{text}\""));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let alpha: u64 = a.trim().parse().map_err(|_| bad())?;
    let beta: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok((alpha, beta))
}

/// Text format: one vertex per line as `v<idx> weight [genus]`, one
/// edge per line as `e <i> <j> [mult]`; `#` starts a comment.
fn parse_graph(text: &str) -> Result<PlumbingGraph, String> {
    let mut vertices: Vec<(usize, i64, u32)> = Vec::new();
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |message: &str| format!("line {}: {message}", number + 1);
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        let fields: Vec<&str> = tokens.collect();
        if let Some(index_text) = head.strip_prefix('v') {
            let index: usize = index_text
                .parse()
                .map_err(|_| at(&format!("bad vertex index \"{head}\"")))?;
            if fields.is_empty() || fields.len() > 2 {
                return Err(at("vertex lines are `v<idx> weight [genus]`"));
            }
            let weight: i64 = fields[0]
                .parse()
                .map_err(|_| at(&format!("bad weight \"{}\"", fields[0])))?;
            let genus: u32 = match fields.get(1) {
                Some(g) => g.parse().map_err(|_| at(&format!("bad genus \"{g}\"")))?,
                None => 0,
            };
            if vertices.iter().any(|&(i, _, _)| i == index) {
                return Err(at(&format!("vertex {index} defined twice")));
            }
            vertices.push((index, weight, genus));
        } else if head == "e" {
            if fields.len() < 2 || fields.len() > 3 {
                return Err(at("edge lines are `e <i> <j> [mult]`"));
            }
            let i: usize = fields[0]
                .parse()
                .map_err(|_| at(&format!("bad vertex index \"{}\"", fields[0])))?;
            let j: usize = fields[1]
                .parse()
                .map_err(|_| at(&format!("bad vertex index \"{}\"", fields[1])))?;
            let mult: u64 = match fields.get(2) {
                Some(m) => m.parse().map_err(|_| at(&format!("bad multiplicity \"{m}\"")))?,
                None => 1,
            };
            edges.push((i, j, mult));
        } else {
            return Err(at(&format!("expected `v<idx>` or `e`, got \"{head}\"")));
        }
    }
    if vertices.is_empty() {
        return Err("no vertices in graph file".to_string());
    }
    vertices.sort_by_key(|&(i, _, _)| i);
    for (slot, &(index, _, _)) in vertices.iter().enumerate() {
        if index != slot {
            return Err(format!(
                "vertex indices must cover 0..{} exactly, missing {slot}",
                vertices.len() - 1
            ));
        }
    }
    let weights: Vec<i64> = vertices.iter().map(|&(_, w, _)| w).collect();
    let genera: Vec<u32> = vertices.iter().map(|&(_, _, g)| g).collect();
    PlumbingGraph::new(weights, genera, &edges).map_err(|err| err.to_string())
}
