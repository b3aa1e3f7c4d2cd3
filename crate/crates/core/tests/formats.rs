use proptest::prelude::*;
use zsr_core::colouring::EdgeColouring;
use zsr_core::Graph;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[i] {
                        g.add_edge(u, v);
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn colouring_strategy() -> impl Strategy<Value = EdgeColouring> {
    (1usize..=9, 2u8..=3).prop_flat_map(|(n, k)| {
        proptest::collection::vec(0..k, n * (n - 1) / 2)
            .prop_map(move |c| EdgeColouring::from_triangle(n, k, c).unwrap())
    })
}

#[test]
fn graph6_known_strings() {
    assert_eq!(Graph::empty(1).to_graph6(), "@");
    assert_eq!(Graph::empty(5).to_graph6(), "D??");
    assert_eq!(Graph::complete(3).to_graph6(), "Bw");
    assert_eq!(Graph::path(3).to_graph6(), "Bg");
    assert_eq!(Graph::complete(4).to_graph6(), "C~");
    let petersen = Graph::from_edges(
        10,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
        ],
    );
    assert_eq!(petersen.to_graph6(), "IheA@GUAo");
    assert_eq!(Graph::from_graph6("IheA@GUAo").unwrap(), petersen);
}

#[test]
fn graph6_rejects_garbage() {
    assert!(Graph::from_graph6("").is_err());
    assert!(Graph::from_graph6("C").is_err());
    assert!(Graph::from_graph6("C~~").is_err());
    assert!(Graph::from_graph6("C\u{7f}").is_err());
}

#[test]
fn colouring_text_format() {
    let c: EdgeColouring = "4 3 012012".parse().unwrap();
    assert_eq!(c.get(0, 1), 0);
    assert_eq!(c.get(0, 2), 1);
    assert_eq!(c.get(0, 3), 2);
    assert_eq!(c.get(1, 2), 0);
    assert_eq!(c.get(1, 3), 1);
    assert_eq!(c.get(2, 3), 2);
    assert_eq!(c.to_string(), "4 3 012012");
    assert!("4 3 01201".parse::<EdgeColouring>().is_err());
    assert!("4 3 012013".parse::<EdgeColouring>().is_err());
    assert!("4 5 012012".parse::<EdgeColouring>().is_err());
    assert!("4 3 0120x2".parse::<EdgeColouring>().is_err());
    assert!("1 3 ".parse::<EdgeColouring>().is_ok());
}

#[test]
fn colouring_serde_uses_text() {
    let c: EdgeColouring = "3 2 101".parse().unwrap();
    let json = serde_json::to_string(&c).unwrap();
    assert_eq!(json, "\"3 2 101\"");
    assert_eq!(serde_json::from_str::<EdgeColouring>(&json).unwrap(), c);
}

proptest! {
    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        let s = g.to_graph6();
        prop_assert!(s.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(Graph::from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn colouring_round_trip(c in colouring_strategy()) {
        let s = c.to_string();
        prop_assert_eq!(s.parse::<EdgeColouring>().unwrap(), c);
    }
}
