/** Deterministic layouts: concentric star rings and a budgeted, seeded
 * force simulation for second-order graphs.
 */

import type { GraphPayload, Point } from "./types.js";

export const RING_CAPACITY = 40;
export const RING_RADIUS_STEP = 160;

/** Concentric star layout: center at the origin, neighbors on rings of at
 * most RING_CAPACITY nodes, angularly equidistant, ordered by node id. */
export function starLayout(payload: GraphPayload): Map<string, Point> {
  const positions = new Map<string, Point>();
  positions.set(payload.center, { x: 0, y: 0 });
  const neighbors = payload.nodes
    .map((n) => n.id)
    .filter((id) => id !== payload.center)
    .sort();
  for (let ring = 0; ring * RING_CAPACITY < neighbors.length; ring += 1) {
    const slice = neighbors.slice(ring * RING_CAPACITY, (ring + 1) * RING_CAPACITY);
    const radius = (ring + 1) * RING_RADIUS_STEP;
    slice.forEach((id, i) => {
      const angle = -Math.PI / 2 + (2 * Math.PI * i) / slice.length;
      positions.set(id, {
        x: radius * Math.cos(angle),
        y: radius * Math.sin(angle),
      });
    });
  }
  return positions;
}

/** Ring index (1-based) of each laid-out neighbor; 0 for the center. */
export function ringOf(payload: GraphPayload, id: string): number {
  if (id === payload.center) {
    return 0;
  }
  const neighbors = payload.nodes
    .map((n) => n.id)
    .filter((nid) => nid !== payload.center)
    .sort();
  const index = neighbors.indexOf(id);
  return index < 0 ? -1 : Math.floor(index / RING_CAPACITY) + 1;
}

// Deterministic 32-bit PRNG so force layouts reproduce across runs.
function hashString(s: string): number {
  let h = 2166136261;
  for (let i = 0; i < s.length; i += 1) {
    h ^= s.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export const FORCE_ITERATION_BUDGET = 150;

/** Spring-electric layout with a fixed iteration budget and a seed derived
 * from the center id. Known nodes start from their previous positions, new
 * nodes on a seeded outer circle, so the animation settles reproducibly. */
export function forceLayout(
  payload: GraphPayload,
  previous: Map<string, Point>,
  iterations: number = FORCE_ITERATION_BUDGET,
): Map<string, Point> {
  const rng = mulberry32(hashString(payload.center));
  const ids = payload.nodes.map((n) => n.id).sort();
  const positions = new Map<string, Point>();
  for (const id of ids) {
    const known = previous.get(id);
    if (known !== undefined) {
      positions.set(id, { x: known.x, y: known.y });
    } else {
      const angle = rng() * 2 * Math.PI;
      const radius = 2.5 * RING_RADIUS_STEP * (0.8 + 0.4 * rng());
      positions.set(id, {
        x: radius * Math.cos(angle),
        y: radius * Math.sin(angle),
      });
    }
  }
  const k = RING_RADIUS_STEP;
  const edges = payload.edges.filter(
    (e) => positions.has(e.from) && positions.has(e.to),
  );
  let temperature = k;
  for (let step = 0; step < iterations; step += 1) {
    const forces = new Map<string, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));
    for (let i = 0; i < ids.length; i += 1) {
      for (let j = i + 1; j < ids.length; j += 1) {
        const a = positions.get(ids[i])!;
        const b = positions.get(ids[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let d2 = dx * dx + dy * dy;
        if (d2 === 0) {
          dx = rng() - 0.5;
          dy = rng() - 0.5;
          d2 = dx * dx + dy * dy;
        }
        const d = Math.sqrt(d2);
        const repulsion = (k * k) / d;
        const fa = forces.get(ids[i])!;
        const fb = forces.get(ids[j])!;
        fa.x += (dx / d) * repulsion;
        fa.y += (dy / d) * repulsion;
        fb.x -= (dx / d) * repulsion;
        fb.y -= (dy / d) * repulsion;
      }
    }
    for (const edge of edges) {
      const a = positions.get(edge.from)!;
      const b = positions.get(edge.to)!;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const d = Math.sqrt(dx * dx + dy * dy) || 0.01;
      const attraction = (d * d) / k;
      const fa = forces.get(edge.from)!;
      const fb = forces.get(edge.to)!;
      fa.x -= (dx / d) * attraction;
      fa.y -= (dy / d) * attraction;
      fb.x += (dx / d) * attraction;
      fb.y += (dy / d) * attraction;
    }
    for (const id of ids) {
      if (id === payload.center) {
        continue; // the chosen document stays pinned at the origin
      }
      const p = positions.get(id)!;
      const f = forces.get(id)!;
      const magnitude = Math.sqrt(f.x * f.x + f.y * f.y) || 0.01;
      const limited = Math.min(magnitude, temperature);
      p.x += (f.x / magnitude) * limited;
      p.y += (f.y / magnitude) * limited;
    }
    temperature *= 0.97;
  }
  return positions;
}
