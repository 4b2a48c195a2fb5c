use flexconn::io::{parse_instance, write_instance};
use flexconn::{Instance, LabeledGraph, Problem};
use proptest::prelude::*;

proptest! {
    #[test]
    fn write_then_parse_is_identity(
        flags in prop::collection::vec(any::<bool>(), 2..8),
        raw in prop::collection::vec((0usize..8, 0usize..8, any::<bool>()), 0..16),
        k in 1usize..4,
    ) {
        let n = flags.len();
        let edges = raw.into_iter().filter(|&(u, v, _)| u < n && v < n && u != v);
        let g = LabeledGraph::from_edges(flags, edges).unwrap();
        let inst = Instance::new(g, Problem::Kfgc, k).unwrap();
        let text = write_instance(&inst);
        let back = parse_instance(&text, Problem::Kfgc, None).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
    }
}
