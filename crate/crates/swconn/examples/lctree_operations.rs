//! Drive the link-cut tree through its primitive operations: access
//! returns the meeting point of consecutive root paths (the lowest common
//! ancestor), path minima come from one subtree aggregate, and link/cut
//! restructure in amortized logarithmic time.
//!
//!     cargo run --example lctree_operations

use swconn::lctree::LinkCutForest;
use swconn::{ConnectivityIndex, Timestamp, VertexId};

fn main() {
    let v = VertexId;
    let mut f = LinkCutForest::new();

    // Build a small tree rooted at 0:
    //        0
    //      /   \
    //     1     2
    //    / \     \
    //   3   4     5
    //  /
    // 6
    for (child, parent, w) in [
        (1, 0, 5u64),
        (2, 0, 8),
        (3, 1, 3),
        (4, 1, 9),
        (5, 2, 7),
        (6, 3, 4),
    ] {
        f.link(v(child), v(parent), Timestamp(w)).unwrap();
    }

    println!("root of 6: {}", f.find_root(v(6)));
    f.access(v(6));
    let lca = f.access(v(4));
    println!("lca(6, 4) via access return: {lca}");

    let min = f.path_min(v(6), v(0)).unwrap();
    println!(
        "minimum edge on 6..0: ({}, {}) at {}",
        min.child, min.parent, min.weight
    );

    println!("query(6, 5) = {}", f.query(v(6), v(5)));
    println!("re-rooting at 6 ...");
    f.re_root(v(6));
    println!("root of 4 is now: {}", f.find_root(v(4)));

    let cut = f.cut(v(1)).unwrap();
    println!(
        "cut 1 from its parent: removed ({}, {}) at {}",
        cut.child, cut.parent, cut.weight
    );
    println!("query(6, 5) after cut = {}", f.query(v(6), v(5)));
    println!(
        "accesses so far: {} (every operation is a constant number of them)",
        f.counters().accesses
    );
}
