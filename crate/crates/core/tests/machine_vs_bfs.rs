use hanoi_core::gasket::sg_distance_reference;
use hanoi_core::machine::{decide, decide_hanoi, distance, distance_hanoi, run_machine};
use hanoi_core::oracle::{bfs_distances, build_graph, GraphKind};
use hanoi_core::transducer::hanoi_to_sg;
use hanoi_core::{GasketWord, HanoiWord, Verdict};

#[test]
fn gasket_distances_match_bfs_exhaustively() {
    for n in 1..=5 {
        let g = build_graph(n, GraphKind::Gasket).unwrap();
        for s in 0..g.vertex_count() {
            let x = GasketWord::from_index(s, n);
            let bfs = bfs_distances(&g, s).unwrap();
            for (t, &want) in bfs.iter().enumerate() {
                let y = GasketWord::from_index(t, n);
                let d = distance(&x, &y).unwrap();
                assert_eq!(d.to_u64(), Some(u64::from(want)), "{x} {y}");
                assert_eq!(d, sg_distance_reference(&x, &y).unwrap());
            }
        }
    }
}

#[test]
fn hanoi_distances_match_bfs_exhaustively() {
    for n in 1..=5 {
        let g = build_graph(n, GraphKind::Hanoi).unwrap();
        for s in 0..g.vertex_count() {
            let x = HanoiWord::from_index(s, n);
            let bfs = bfs_distances(&g, s).unwrap();
            for (t, &want) in bfs.iter().enumerate() {
                let y = HanoiWord::from_index(t, n);
                assert_eq!(distance_hanoi(&x, &y).unwrap().to_u64(), Some(u64::from(want)), "{x} {y}");
            }
        }
    }
}

#[test]
fn streaming_and_translated_inputs_agree() {
    for n in 1..=4 {
        let count = 3usize.pow(n as u32);
        for s in 0..count {
            for t in 0..count {
                let (x, y) = (HanoiWord::from_index(s, n), HanoiWord::from_index(t, n));
                let (gx, gy) = (hanoi_to_sg(&x), hanoi_to_sg(&y));
                assert_eq!(decide_hanoi(&x, &y).unwrap(), decide(&gx, &gy).unwrap());
                assert_eq!(distance_hanoi(&x, &y).unwrap(), distance(&gx, &gy).unwrap());
            }
        }
    }
}

#[test]
fn decide_reads_a_prefix_of_distance() {
    for n in 1..=5 {
        let count = 3usize.pow(n as u32);
        for s in 0..count {
            for t in 0..count {
                let (x, y) = (GasketWord::from_index(s, n), GasketWord::from_index(t, n));
                let run = run_machine(&x, &y).unwrap();
                let early = decide(&x, &y).unwrap();
                assert_eq!(early.verdict, run.decision.verdict);
                assert!(early.symbols_read() <= run.symbols_read);
                assert_eq!(run.symbols_read, 2 * n);
                assert_eq!(early.verdict == Verdict::Identical, s == t);
            }
        }
    }
}
