//! Min-cost flow formulation for non-increasing valuations.
//!
//! Nodes: source, one per agent, one per item, sink. The source feeds each
//! agent `T` units; each (agent, item, copy) triple is a unit arc costing
//! minus the copy value; each item drains `T` units to the sink. A min-cost
//! flow of value `n*T` then selects, for every pair, how many copies the
//! agent takes, and non-increasing values make the selected copies an
//! initial prefix (up to value-preserving relabeling), so the arc counts per
//! pair form an optimal frequency matrix.
//!
//! Successive shortest paths with node potentials; the initial potentials
//! come from one Bellman-Ford pass because copy costs may be negative, after
//! which every Dijkstra runs on non-negative reduced costs.

use crate::instance::Instance;
use crate::rational::Rational;
use num::Zero;

struct Arc {
    to: usize,
    cap: i64,
    residual: i64,
    cost: Rational,
}

pub struct FlowNetwork {
    node_count: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
    adjacency: Vec<Vec<usize>>,
    /// (arc index, agent, item) for every unit copy arc.
    copy_arcs: Vec<(usize, usize, usize)>,
    n: usize,
    rounds: usize,
}

impl FlowNetwork {
    /// Builds the assignment network: `n*n*T` unit copy arcs plus the
    /// source/sink plumbing.
    pub fn build(inst: &Instance) -> Self {
        let n = inst.n();
        let rounds = inst.rounds();
        let node_count = 2 * n + 2;
        let mut net = FlowNetwork {
            node_count,
            source: 0,
            sink: 2 * n + 1,
            arcs: Vec::new(),
            adjacency: vec![Vec::new(); node_count],
            copy_arcs: Vec::with_capacity(n * n * rounds),
            n,
            rounds,
        };
        let agent_node = |i: usize| 1 + i;
        let item_node = |g: usize| 1 + n + g;
        for i in 0..n {
            net.add_arc(net.source, agent_node(i), rounds as i64, Rational::zero());
        }
        for i in 0..n {
            for g in 0..n {
                for t in 1..=rounds {
                    let id = net.add_arc(agent_node(i), item_node(g), 1, -inst.value(i, g, t));
                    net.copy_arcs.push((id, i, g));
                }
            }
        }
        for g in 0..n {
            net.add_arc(item_node(g), net.sink, rounds as i64, Rational::zero());
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: Rational) -> usize {
        let id = self.arcs.len();
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
        self.arcs.push(Arc {
            to,
            cap,
            residual: cap,
            cost: cost.clone(),
        });
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            residual: 0,
            cost: -cost,
        });
        id
    }

    fn arc_from(&self, arc_id: usize) -> usize {
        self.arcs[arc_id ^ 1].to
    }

    /// Pushes `n*T` units of flow at minimum total cost. Returns the flow
    /// value and cost; arc flows are integral throughout since capacities
    /// and augmentation amounts are integers.
    pub fn solve(&mut self) -> (i64, Rational) {
        let target = (self.n * self.rounds) as i64;
        let mut potentials = self.bellman_ford_potentials();
        let mut flow = 0i64;
        while flow < target {
            let (dist, parent) = self.dijkstra(&potentials);
            let sink_dist = dist[self.sink]
                .clone()
                .expect("complete assignment network always admits more flow");

            let mut bottleneck = target - flow;
            let mut node = self.sink;
            while node != self.source {
                let arc_id = parent[node];
                bottleneck = bottleneck.min(self.arcs[arc_id].residual);
                node = self.arc_from(arc_id);
            }
            debug_assert!(bottleneck >= 1);

            let mut node = self.sink;
            while node != self.source {
                let arc_id = parent[node];
                self.arcs[arc_id].residual -= bottleneck;
                self.arcs[arc_id ^ 1].residual += bottleneck;
                node = self.arc_from(arc_id);
            }
            flow += bottleneck;

            for v in 0..self.node_count {
                match &dist[v] {
                    Some(d) if d <= &sink_dist => potentials[v] += d,
                    _ => potentials[v] += &sink_dist,
                }
            }
        }

        let mut cost = Rational::zero();
        for arc_id in (0..self.arcs.len()).step_by(2) {
            let sent = self.arcs[arc_id].cap - self.arcs[arc_id].residual;
            debug_assert!(sent >= 0);
            if sent > 0 {
                cost += &self.arcs[arc_id].cost * Rational::from_integer(sent.into());
            }
        }
        (flow, cost)
    }

    fn bellman_ford_potentials(&self) -> Vec<Rational> {
        let mut dist: Vec<Option<Rational>> = vec![None; self.node_count];
        dist[self.source] = Some(Rational::zero());
        for _ in 0..self.node_count {
            let mut changed = false;
            for (arc_id, arc) in self.arcs.iter().enumerate() {
                if arc.residual <= 0 {
                    continue;
                }
                let from = self.arc_from(arc_id);
                if let Some(df) = dist[from].clone() {
                    let candidate = df + &arc.cost;
                    if dist[arc.to].as_ref().is_none_or(|d| &candidate < d) {
                        dist[arc.to] = Some(candidate);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        dist.into_iter()
            .map(|d| d.expect("all nodes reachable from the source"))
            .collect()
    }

    /// Dense Dijkstra over reduced costs; fine for the small node count here.
    fn dijkstra(&self, potentials: &[Rational]) -> (Vec<Option<Rational>>, Vec<usize>) {
        let mut dist: Vec<Option<Rational>> = vec![None; self.node_count];
        let mut parent = vec![usize::MAX; self.node_count];
        let mut done = vec![false; self.node_count];
        dist[self.source] = Some(Rational::zero());
        loop {
            let mut current = usize::MAX;
            for v in 0..self.node_count {
                if done[v] || dist[v].is_none() {
                    continue;
                }
                if current == usize::MAX || dist[v] < dist[current] {
                    current = v;
                }
            }
            if current == usize::MAX {
                break;
            }
            done[current] = true;
            let base = dist[current].clone().unwrap();
            for &arc_id in &self.adjacency[current] {
                let arc = &self.arcs[arc_id];
                if arc.residual <= 0 || self.arc_from(arc_id) != current {
                    continue;
                }
                let reduced = &arc.cost + &potentials[current] - &potentials[arc.to];
                debug_assert!(reduced >= Rational::zero());
                let candidate = &base + reduced;
                if dist[arc.to].as_ref().is_none_or(|d| &candidate < d) {
                    dist[arc.to] = Some(candidate);
                    parent[arc.to] = arc_id;
                }
            }
        }
        (dist, parent)
    }

    /// Per-pair counts of saturated copy arcs.
    pub fn copy_counts(&self) -> Vec<Vec<usize>> {
        let mut counts = vec![vec![0usize; self.n]; self.n];
        for &(arc_id, agent, item) in &self.copy_arcs {
            let sent = self.arcs[arc_id].cap - self.arcs[arc_id].residual;
            debug_assert!(sent == 0 || sent == 1);
            counts[agent][item] += sent as usize;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::FrequencyMatrix;
    use crate::rational::rat;

    #[test]
    fn decay_network_reaches_full_flow_with_optimal_cost() {
        let inst = fixtures::decay_3x2(rat(1, 10));
        let mut net = FlowNetwork::build(&inst);
        let (flow, cost) = net.solve();
        assert_eq!(flow, 6);
        assert_eq!(-cost, rat(19, 5));
        let f = FrequencyMatrix::new(net.copy_counts()).unwrap();
        assert_eq!(f.rounds(), 2);
    }

    #[test]
    fn copy_arc_count_matches_dimensions() {
        let inst = fixtures::constant_2x3();
        let net = FlowNetwork::build(&inst);
        assert_eq!(net.copy_arcs.len(), 2 * 2 * 3);
    }
}
