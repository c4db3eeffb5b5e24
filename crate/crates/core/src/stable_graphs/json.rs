use serde_json::{json, Value};

use super::graph::StableGraph;

impl StableGraph {
    /// JSON form: vertices with genera, half-edge ids, the vertex map, the
    /// involution as pairs and the legs in marking order.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> =
            self.genera().iter().enumerate().map(|(v, g)| json!({"id": v, "genus": g})).collect();
        let vertex_of: serde_json::Map<String, Value> =
            (0..self.num_half_edges()).map(|h| (h.to_string(), json!(self.vertex_of(h)))).collect();
        let pairs: Vec<[usize; 2]> = self.edges().into_iter().map(|(a, b)| [a, b]).collect();
        json!({
            "vertices": vertices,
            "half_edges": (0..self.num_half_edges()).collect::<Vec<_>>(),
            "vertex_of": vertex_of,
            "involution_pairs": pairs,
            "legs": self.legs(),
        })
    }
}
