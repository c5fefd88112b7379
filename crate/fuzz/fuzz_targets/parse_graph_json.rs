#![no_main]

use fareymap::export::{parse_graph_json, write_graph, ExportFormat};
use fareymap::map::build_map;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(graph) = parse_graph_json(text) {
        for (u, v) in &graph.edges {
            assert_eq!(u.level(), graph.level);
            assert_eq!(v.level(), graph.level);
        }
        if graph.level.get() <= 12 {
            let map = build_map(graph.level).unwrap();
            let canonical = write_graph(&map, ExportFormat::Json).unwrap();
            assert!(parse_graph_json(&canonical).is_ok());
        }
    }
});
