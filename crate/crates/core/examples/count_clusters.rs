use kn_frieze::separation::{enumerate_clusters, DEFAULT_CAP};
use kn_frieze::Shape;
use std::time::Instant;

fn main() {
    for (k, n) in [(2, 4), (2, 5), (2, 6), (2, 7), (2, 8), (3, 6), (3, 7), (3, 8), (4, 8)] {
        let t = Instant::now();
        let c = enumerate_clusters(Shape::new(k, n).unwrap(), DEFAULT_CAP).unwrap();
        println!("({k},{n}) {} clusters in {:?}", c.len(), t.elapsed());
    }
}
