//! Test-only oracles that share no code path with the library's tree model.

#![allow(dead_code)]

/// Generic AHU canonical form of an oriented tree rooted at `root`: every
/// child is tagged with the direction of its edge and children are sorted,
/// with no knowledge of which attachments are legal.
pub fn ahu(n: usize, edges: &[(usize, usize)], root: usize) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push((v, 'u'));
        adj[v].push((u, 'd'));
    }
    fn go(adj: &[Vec<(usize, char)>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&(w, _)| w != parent)
            .map(|&(w, tag)| format!("{tag}{}", go(adj, w, v)))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    go(&adj, root, usize::MAX)
}

/// Decodes a Prüfer sequence over `n` vertices into an undirected edge list.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Calls `f` with every Prüfer sequence of length `n - 2`.
pub fn for_each_prufer(n: usize, mut f: impl FnMut(&[usize])) {
    let len = n - 2;
    let mut seq = vec![0usize; len];
    loop {
        f(&seq);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Local orientation rules written out directly: leaves are sources or
/// sinks, degree-3 vertices have both incoming and outgoing edges, a degree-2
/// vertex has one of each.
pub fn locally_realizable(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0; n];
    let mut outdeg = vec![0; n];
    for &(u, v) in edges {
        outdeg[u] += 1;
        indeg[v] += 1;
    }
    (0..n).all(|v| match indeg[v] + outdeg[v] {
        1 => true,
        2 => indeg[v] == 1,
        3 => indeg[v] > 0 && outdeg[v] > 0,
        _ => false,
    })
}

/// Brute force over every labeled oriented tree on `2k + 1` vertices: the
/// number of isomorphism classes of valid full graphs with `k` saddles.
pub fn brute_force_full(k: usize) -> usize {
    let n = 2 * k + 1;
    let mut classes = std::collections::HashSet::new();
    if n == 1 {
        return 0;
    }
    let mut consider = |undirected: Vec<(usize, usize)>| {
        let mut degree = vec![0; n];
        for &(u, v) in &undirected {
            degree[u] += 1;
            degree[v] += 1;
        }
        if degree.iter().filter(|&&d| d == 2).count() != 1
            || degree.iter().any(|&d| d != 1 && d != 2 && d != 3)
        {
            return;
        }
        let middle = degree.iter().position(|&d| d == 2).unwrap();
        for mask in 0u32..(1 << undirected.len()) {
            let edges: Vec<(usize, usize)> = undirected
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) })
                .collect();
            if locally_realizable(n, &edges) {
                classes.insert(ahu(n, &edges, middle));
            }
        }
    };
    if n == 2 {
        consider(vec![(0, 1)]);
    } else {
        for_each_prufer(n, |seq| consider(prufer_decode(seq, n)));
    }
    classes.len()
}

/// Brute force for rooted trees: `2k + 2` vertices where vertex 0 is the
/// root stub, a source of degree 1.
pub fn brute_force_rooted(k: usize) -> usize {
    let n = 2 * k + 2;
    let mut classes = std::collections::HashSet::new();
    let mut consider = |undirected: Vec<(usize, usize)>| {
        let mut degree = vec![0; n];
        for &(u, v) in &undirected {
            degree[u] += 1;
            degree[v] += 1;
        }
        if degree[0] != 1 || degree.iter().any(|&d| d != 1 && d != 3) {
            return;
        }
        for mask in 0u32..(1 << undirected.len()) {
            let edges: Vec<(usize, usize)> = undirected
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) })
                .collect();
            let stub_out = edges.iter().any(|&(u, _)| u == 0);
            if stub_out && locally_realizable(n, &edges) {
                classes.insert(ahu(n, &edges, 0));
            }
        }
    };
    if n == 2 {
        consider(vec![(0, 1)]);
    } else {
        for_each_prufer(n, |seq| consider(prufer_decode(seq, n)));
    }
    classes.len()
}

/// K by the plain three-option sum over all splits, in u128.
pub fn rooted_direct(k_max: usize) -> Vec<u128> {
    let mut k = vec![1u128];
    for m in 1..=k_max {
        let mut total = 0u128;
        for i in 0..m {
            let j = m - 1 - i;
            // ordered mixed pairs
            total += k[i] * k[j];
            // unordered up-up pairs
            if i < j {
                total += k[i] * k[j];
            } else if i == j {
                total += k[i] * (k[i] + 1) / 2;
            }
        }
        k.push(total);
    }
    k
}

pub fn full_direct(k_max: usize) -> Vec<u128> {
    let k = rooted_direct(k_max);
    (0..=k_max)
        .map(|m| (0..m).map(|i| k[i] * k[m - 1 - i]).sum())
        .collect()
}
