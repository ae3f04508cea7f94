// Pure view-model helpers. Everything here derives display data from the
// latest server responses; nothing clusters or partitions locally.
function extent(values) {
    let min = Infinity;
    let max = -Infinity;
    for (const v of values) {
        if (v < min)
            min = v;
        if (v > max)
            max = v;
    }
    if (!isFinite(min))
        return { min: 0, max: 1 };
    if (min === max)
        return { min: min - 0.5, max: max + 0.5 };
    return { min, max };
}
// log mode uses log10(1 + v): defined at 0 (duplicate-point connections have
// squared distance 0) and monotone, which is all axis placement needs
export function axisValue(v, scale) {
    return scale === 'log' ? Math.log10(1 + v) : v;
}
export function scatterLayout(connections, removed, scale, width, height, pad = 24) {
    const xs = connections.map((c) => axisValue(c.square_distance, scale));
    const ys = connections.map((c) => axisValue(c.mass_product, scale));
    const ex = extent(xs);
    const ey = extent(ys);
    const sx = (width - 2 * pad) / (ex.max - ex.min);
    const sy = (height - 2 * pad) / (ey.max - ey.min);
    return connections.map((c, i) => ({
        id: c.id,
        cx: pad + (xs[i] - ex.min) * sx,
        cy: height - pad - (ys[i] - ey.min) * sy, // y grows upward
        removed: removed.has(c.id),
        redundant: c.redundant,
    }));
}
export const PALETTE = [
    '#4c78a8', '#f58518', '#54a24b', '#e45756', '#72b7b2', '#b279a2',
    '#ff9da6', '#9d755d', '#bab0ac', '#eeca3b', '#439894', '#d67195',
];
export function colorForLabel(label) {
    return PALETTE[label % PALETTE.length];
}
export function partitionLayout(projection, labels, width, height, pad = 16) {
    const ex = extent(projection.map((p) => p[0]));
    const ey = extent(projection.map((p) => p[1]));
    const sx = (width - 2 * pad) / (ex.max - ex.min);
    const sy = (height - 2 * pad) / (ey.max - ey.min);
    return projection.map(([x, y], i) => ({
        cx: pad + (x - ex.min) * sx,
        cy: height - pad - (y - ey.min) * sy,
        label: labels[i],
        color: colorForLabel(labels[i]),
    }));
}
export function distinctColors(points) {
    return new Set(points.map((p) => p.color));
}
export function gammaBarHeights(ranking, maxBars, plotHeight) {
    const shown = ranking.slice(0, maxBars);
    if (shown.length === 0)
        return [];
    const top = axisValue(shown[0].torque, 'log');
    return shown.map((entry) => ({
        entry,
        height: top > 0 ? Math.max(2, (axisValue(entry.torque, 'log') / top) * plotHeight) : 2,
    }));
}
