//! Maximal planar graphs: embeddings, BFS layers around a face, a connected
//! dominating set built from those layers, and the coloring of the whole
//! graph from a coloring of that set.

mod dominating;
mod embedding;
mod extend;
mod layers;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub use dominating::{build_dominating_plan, color_dominating_set, DominatingColoring, DominatingPlan};
pub use embedding::{FaceSummary, PlanarEmbedding};
pub use extend::{extend_coloring, Extension, ExtensionSummary};
pub use layers::{layer_decomposition, neighbor_cycle, smallest_face, LayerDecomposition, NeighborCycles, Side};

use crate::coloring::{is_rainbow_connected, EdgeColoring, VerificationReport};
use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{self, Graph};

/// Both bounds the planar construction is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarBounds {
    /// `⌈n/κ + 1 + κ² + 2κ⌉`.
    pub layered: usize,
    /// `⌈n/κ + 36⌉`.
    pub uniform: usize,
    /// `⌈n/κ⌉ + 1`, for the dominating set alone.
    pub dominating: usize,
    /// `κ² + 2κ`, for the extension.
    pub extension: usize,
}

impl PlanarBounds {
    pub fn new(n: usize, kappa: usize) -> Self {
        let nk = Ratio::new(n as i64, kappa as i64);
        let ceil = |r: Ratio<i64>| r.ceil().to_integer() as usize;
        let k = (kappa * kappa + 2 * kappa) as i64;
        PlanarBounds {
            layered: ceil(nk + 1 + k),
            uniform: ceil(nk + 36),
            dominating: ceil(nk) + 1,
            extension: k as usize,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlanarConstruction {
    pub kappa: usize,
    pub n: usize,
    pub diam: usize,
    pub layers: LayerDecomposition,
    pub plan: DominatingPlan,
    /// Palette of the coloring of `G[D]`.
    pub dominating_palette: usize,
    pub dominating_fallback_layers: Vec<usize>,
    /// `G[D]` was recolored along a spanning tree.
    pub dominating_tree_fallback: bool,
    pub extension: ExtensionSummary,
    pub coloring: EdgeColoring,
    pub bounds: PlanarBounds,
    pub verification: VerificationReport,
}

impl PlanarConstruction {
    pub fn palette_size(&self) -> usize {
        self.coloring.palette_size()
    }

    pub fn verified(&self) -> bool {
        self.verification.rainbow_connected
    }

    /// True when no fallback engaged and both numeric bounds hold.
    pub fn bound_met(&self) -> bool {
        let p = self.palette_size();
        p <= self.bounds.layered
            && p <= self.bounds.uniform
            && !self.extension.fallback
            && self.dominating_fallback_layers.is_empty()
            && self.plan.connectors.is_empty()
            && !self.dominating_tree_fallback
    }
}

/// Runs the full pipeline with the seed face chosen as the smallest face.
pub fn construct_planar(emb: &PlanarEmbedding) -> Result<PlanarConstruction> {
    let g = emb.graph();
    let summary = emb.validate_maximal_planar()?;
    if !summary.maximal {
        return Err(Error::NotMaximalPlanar { faces: summary.faces, edges: g.m() });
    }
    let kappa = vertex_connectivity(g);
    if kappa < 3 {
        return Err(Error::ConnectivityTooLow { required: 3, found: kappa });
    }
    let layers = layer_decomposition(emb, &smallest_face(emb))?;
    let plan = build_dominating_plan(g, &layers, kappa)?;
    let dc = color_dominating_set(g, &layers, &plan)?;
    let ext = extend_coloring(g, &plan.d, &dc.coloring, plan.radius)?;
    let verification = is_rainbow_connected(g, &ext.coloring)?;
    Ok(PlanarConstruction {
        kappa,
        n: g.n(),
        diam: graph::diameter(g).ok_or(Error::Disconnected)?,
        bounds: PlanarBounds::new(g.n(), kappa),
        dominating_palette: dc.palette,
        dominating_fallback_layers: dc.fallback_layers,
        dominating_tree_fallback: dc.tree_fallback,
        extension: ext.summary(),
        coloring: ext.coloring,
        layers,
        plan,
        verification,
    })
}

/// The coloring restricted to `G[D]`, on the induced subgraph's edge ids.
pub fn induced_coloring(g: &Graph, col: &EdgeColoring, d: &graph::VertexSet) -> Result<(Graph, EdgeColoring)> {
    let sub = graph::induced_subgraph(g, d)?;
    let colors = sub
        .graph
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (u, v) = (sub.to_original[a], sub.to_original[b]);
            col.color_of(g, u, v).ok_or(Error::PartialColoring(u, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let induced = EdgeColoring::from_colors(&sub.graph, colors)?;
    Ok((sub.graph, induced))
}
