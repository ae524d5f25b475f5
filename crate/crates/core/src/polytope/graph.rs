use std::collections::VecDeque;

/// Simple undirected graph on vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGraph {
    adj: Vec<Vec<usize>>,
}

impl EdgeGraph {
    pub fn new(n: usize, edges: &[[usize; 2]]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &[a, b] in edges {
            if a != b && !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Self { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.adj.len()
    }

    /// Proper 2-coloring by BFS, with vertex 0's component starting at color
    /// 0. `None` if some cycle is odd.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.adj.len();
        let mut color: Vec<Option<u8>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for &w in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(1 - c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_cycle_colors_odd_cycle_does_not() {
        let square = EdgeGraph::new(4, &[[0, 1], [1, 2], [2, 3], [0, 3]]);
        assert_eq!(square.two_coloring(), Some(vec![0, 1, 0, 1]));
        let triangle = EdgeGraph::new(3, &[[0, 1], [1, 2], [0, 2]]);
        assert_eq!(triangle.two_coloring(), None);
    }

    #[test]
    fn connectivity() {
        assert!(EdgeGraph::new(3, &[[0, 1], [1, 2]]).is_connected());
        assert!(!EdgeGraph::new(3, &[[0, 1]]).is_connected());
        assert_eq!(EdgeGraph::new(3, &[[0, 1], [1, 2]]).degree(1), 2);
    }
}
