use distrep::diam3::{closed_form_tensor, cycle_table};
use distrep::generators::{FamilyRegistry, FixedGraph};
use distrep::ra::{identify, verify_representation, CycleSpec};
use distrep::reproduce::{reproduce_table, CellStatus, ReproduceOptions, EXPECTED};
use distrep::scheme::{count_tensor, distance_coloring, extract_array};
use distrep::symmetry::{is_algebraic, is_distance_transitive};
use distrep::{Graph, IntersectionArray};

#[test]
fn every_generated_row_is_a_representation_of_its_array() {
    let reg = FamilyRegistry::builtin();
    for row in EXPECTED.iter().filter(|r| r.family.is_some()) {
        let g = reg.build(row.family.unwrap(), row.parameter).unwrap();
        let cg = distance_coloring(&g).unwrap();
        let t = count_tensor(&cg).into_tensor().expect(row.graph);
        let arr = extract_array(&t).unwrap();
        assert_eq!(arr.to_string(), row.array, "{}", row.graph);
        assert_eq!(t.point_count(), row.vertices);
        let ct = cycle_table(&arr).unwrap();
        let report = verify_representation(&cg, &CycleSpec::from_table(&ct)).unwrap();
        assert!(report.passed(), "{}: {:?}", row.graph, report.violations);
        assert_eq!(identify(&ct).unwrap().name, row.algebra, "{}", row.graph);
        assert_eq!(
            closed_form_tensor(&arr).unwrap().to_tensor(),
            t,
            "{}",
            row.graph
        );
    }
}

#[test]
fn distance_transitivity_of_generated_rows() {
    let reg = FamilyRegistry::builtin();
    for row in EXPECTED.iter().filter(|r| r.family.is_some()) {
        let g = reg.build(row.family.unwrap(), row.parameter).unwrap();
        let dt = is_distance_transitive(&g).unwrap();
        assert_eq!(dt, is_algebraic(&distance_coloring(&g).unwrap()).unwrap());
        // including the line graph of the Petersen graph, on whose 15
        // vertices S_5 acts distance-transitively
        assert!(dt, "{}", row.graph);
    }
}

#[test]
fn reproduction_flags_only_the_petersen_line_cell() {
    let report = reproduce_table(
        &FamilyRegistry::builtin(),
        None,
        ReproduceOptions::default(),
    );
    assert_eq!(report.rows.len(), 8);
    let mismatched: Vec<(&str, &str)> = report
        .rows
        .iter()
        .flat_map(|r| {
            [
                ("array", &r.array),
                ("algebra", &r.algebra),
                ("vertices", &r.vertices),
                ("dt", &r.distance_transitive),
            ]
            .into_iter()
            .filter(|(_, c)| c.status == CellStatus::Mismatch)
            .map(move |(name, _)| (r.graph.as_str(), name))
        })
        .collect();
    assert_eq!(mismatched, vec![("Line graph of Petersen", "dt")]);
    let ms = &report.rows[7];
    assert_eq!(ms.source, "array");
    assert_eq!(ms.distance_transitive.status, CellStatus::Skipped);
    assert_eq!(report.rows.iter().filter(|r| r.fully_verified()).count(), 6);
}

#[test]
fn supplied_graph_replaces_the_array_only_row() {
    // a wrong stand-in is reported cell by cell
    let g = Graph::cycle(7).unwrap();
    let report = reproduce_table(
        &FamilyRegistry::builtin(),
        Some(&g),
        ReproduceOptions::default(),
    );
    let ms = &report.rows[7];
    assert_eq!(ms.source, "graph");
    assert_eq!(ms.vertices.status, CellStatus::Mismatch);
    assert_eq!(ms.array.status, CellStatus::Mismatch);
}

#[test]
fn corrupted_registry_entry_is_caught() {
    let mut reg = FamilyRegistry::builtin();
    let mut edges: Vec<(usize, usize)> = reg.build("icosahedron", None).unwrap().edges().collect();
    edges.swap_remove(0);
    reg.register(Box::new(FixedGraph::new(
        "icosahedron",
        "one edge short",
        Graph::new(12, edges).unwrap(),
    )));
    let report = reproduce_table(&reg, None, ReproduceOptions::default());
    assert!(!report.rows[1].all_match());
    assert!(report.mismatches >= 2);
}

#[test]
fn moscow_soicher_closed_forms() {
    let arr: IntersectionArray = "110,81,12;1,18,90".parse().unwrap();
    let f = closed_form_tensor(&arr).unwrap();
    assert_eq!(f.layer_sizes(), [1, 110, 495, 66]);
    let ct = cycle_table(&arr).unwrap();
    assert_eq!(
        ct.mandatory_names(),
        ["aaa", "bbb", "abb", "baa", "acc", "caa", "bcc", "abc"]
    );
    assert_eq!(identify(&ct).unwrap().name, "57_65");
}
