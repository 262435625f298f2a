//! Order relations (partial, total, cyclic), the proximities they induce,
//! proximity-graph/Hasse-diagram equivalence checks, and a Delaunay-based
//! pipeline that orders triangulated frames by nerve-cluster area or
//! centroidal cycle length.

pub mod frames;
pub mod geometry;
pub mod graph;
pub mod nerve;
pub mod order;
pub mod proximity;

#[cfg(test)]
pub(crate) mod testutil;

pub use frames::{
    chain_graph, frame_subgraph, ingest_frames, order_by_cycle_length,
    order_by_cycle_length_with_epsilon, order_by_mnc_area, order_by_mnc_area_with_epsilon,
    synthesize_frames, Frame, FramePairRecord, FrameSet, FramesError, MeasureKind, OrderedChain,
    SkippedFeature,
};
pub use geometry::{
    centroid, delaunay, delaunay_with_epsilon, in_circumcircle, orientation_angle, triangle_area,
    GeometryError, Point2, Triangle, Triangulation, DEFAULT_EPSILON,
};
pub use graph::{
    check_equivalence, edge_diff, hasse, order_graph, proximity_graph, transitive_reduction,
    DirectedGraph, EquivalenceReport, GraphError, GraphFormat,
};
pub use nerve::{
    find_mncs, maximal_cycle, mnc_area, spoke_complex, MaximalCycle, NerveCluster, NerveError,
    SpokeComplex,
};
pub use order::{
    order_from_json, CyclicOrder, OrderError, OrderJsonError, OrderKind, OrderSpace, PartialOrder,
    TotalOrder,
};
pub use proximity::{
    chain_between, check_properties, near, near_cyclic, near_partial, near_total, PropertyCheck,
    PropertyReport, Proximity,
};
