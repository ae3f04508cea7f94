// Explorer contract, driven against captured service responses: the bundled
// three-blob demo fixtures were recorded from a real session, so the labels,
// torques and K values asserted here are the service's own.
import assert from 'node:assert/strict';
import { beforeEach, test } from 'node:test';
import { ExplorerApp } from '../src/explorer.js';
import { colorForLabel } from '../src/state.js';
import { click, root, setupDom } from './dom.js';
import { loadFixture, MockApi } from './mock_api.js';
const demo = loadFixture('demo.json');
const redundantFixture = loadFixture('redundant.json');
function demoMock() {
    return new MockApi(demo.summary, demo.graph, [demo.partition_empty, demo.partition_after_first_toggle,
        demo.partition_after_second_toggle], demo.gamma, demo.projection, demo.partition_auto);
}
function redundantMock() {
    const summary = {
        session_id: 'redundant', n: 3, d: null, k: 1, removed: [],
        rounds: redundantFixture.graph.rounds, version: 0,
        projection_available: false,
    };
    return new MockApi(summary, redundantFixture.graph, [redundantFixture.partition_empty,
        redundantFixture.partition_after_redundant_toggle], { ranking: [] }, null);
}
async function loadedApp(mock) {
    const app = new ExplorerApp(mock, root());
    await app.load('demo');
    return app;
}
function circles() {
    return [...document.querySelectorAll('svg.decision-graph circle.connection')];
}
function circleFor(id) {
    const hit = circles().find((c) => c.getAttribute('data-id') === String(id));
    assert.ok(hit, `no rendered connection for id ${id}`);
    return hit;
}
function kReadout() {
    return document.querySelector('.k-readout')?.textContent ?? '';
}
beforeEach(() => setupDom());
test('renders every connection of the demo decision graph', async () => {
    await loadedApp(demoMock());
    assert.equal(circles().length, demo.graph.connections.length);
    assert.equal(kReadout(), 'K=1'); // mock session starts from an empty cut
});
test('clicking the two largest-torque points flips K from 1 to 3', async () => {
    const app = await loadedApp(demoMock());
    const [top1, top2] = demo.top_ids;
    click(circleFor(top1));
    await app.flush();
    assert.equal(kReadout(), 'K=2');
    click(circleFor(top2));
    await app.flush();
    assert.equal(kReadout(), 'K=3');
    // removed points are drawn bold (larger radius, removed class)
    const removed = circles().filter((c) => c.getAttribute('class')?.includes('removed'));
    assert.deepEqual(removed.map((c) => Number(c.getAttribute('data-id'))).sort((a, b) => a - b), [...demo.top_ids].sort((a, b) => a - b));
});
test('partition scatter shows three colors matching the service labels', async () => {
    const app = await loadedApp(demoMock());
    for (const id of demo.top_ids) {
        click(circleFor(id));
    }
    await app.flush();
    const samples = [...document.querySelectorAll('svg.partition-view circle.sample')];
    assert.equal(samples.length, demo.summary.n);
    const labels = demo.partition_after_second_toggle.labels;
    samples.forEach((circle, i) => {
        assert.equal(circle.getAttribute('fill'), colorForLabel(labels[i]));
    });
    assert.equal(app.partitionColors().size, 3);
});
test('toggling a redundant edge warns and leaves K unchanged', async () => {
    const app = await loadedApp(redundantMock());
    assert.equal(kReadout(), 'K=1');
    const redundantId = redundantFixture.graph.connections.find((c) => c.redundant).id;
    click(circleFor(redundantId));
    await app.flush();
    assert.equal(kReadout(), 'K=1');
    const toast = document.querySelector('.toast')?.textContent ?? '';
    assert.ok(toast.includes('redundant'), `toast was: ${toast}`);
});
test('double-toggle restores the original state', async () => {
    const app = await loadedApp(demoMock());
    const target = demo.top_ids[0];
    click(circleFor(target));
    click(circleFor(target)); // queued behind the first toggle
    await app.flush();
    assert.equal(kReadout(), 'K=1');
    assert.equal(app.removedSet.size, 0);
});
test('log-scale toggle is view-only and preserves the selection', async () => {
    const app = await loadedApp(demoMock());
    click(circleFor(demo.top_ids[0]));
    await app.flush();
    const before = [...app.removedSet];
    const scaleButton = document.querySelector('button.scale-toggle');
    click(scaleButton);
    assert.deepEqual([...app.removedSet], before);
    assert.equal(circles().length, demo.graph.connections.length);
    assert.equal(kReadout(), 'K=2');
});
test('server rejection shows a toast and reverts the selection', async () => {
    const mock = demoMock();
    const app = await loadedApp(mock);
    mock.failNextCut = 'unknown connection id 999999';
    click(circleFor(demo.top_ids[0]));
    await app.flush();
    assert.equal(kReadout(), 'K=1'); // unchanged
    assert.equal(app.removedSet.size, 0);
    const toast = document.querySelector('.toast')?.textContent ?? '';
    assert.ok(toast.includes('999999'));
});
test('auto tab applies the automatic cut through the server', async () => {
    const app = await loadedApp(demoMock());
    click(document.querySelector('button.tab-auto'));
    await app.flush();
    assert.equal(kReadout(), `K=${demo.partition_auto.k}`);
});
test('gamma bar click asks for a top-K cut with K = rank + 1', async () => {
    const mock = demoMock();
    const app = await loadedApp(mock);
    const bars = [...document.querySelectorAll('.gamma-bar')];
    assert.ok(bars.length > 2);
    click(bars[1]); // rank 2 -> K = 3
    await app.flush();
    assert.deepEqual(mock.cutLog.at(-1), { mode: 'topk', k: 3 });
    assert.equal(kReadout(), 'K=3');
});
test('empty session shows the empty state and hides the gamma panel', async () => {
    const summary = {
        session_id: 'one', n: 1, d: 2, k: 1, removed: [], rounds: [1],
        version: 0, projection_available: true,
    };
    const emptyPartition = {
        k: 1, cluster_sizes: [1], labels: [0], labels_path: null,
        removed: [], version: 0, warnings: [],
    };
    const mock = new MockApi(summary, { connections: [], removed: [], rounds: [1], version: 0 }, [emptyPartition], { ranking: [] }, { points: [[0, 0]] });
    await loadedApp(mock);
    assert.equal(circles().length, 0);
    const emptyState = document.querySelector('.empty-state');
    assert.notEqual(emptyState.style.display, 'none');
    const gammaPanel = document.querySelector('.gamma-panel');
    assert.equal(gammaPanel.style.display, 'none');
});
test('hovering a point fills the detail line', async () => {
    await loadedApp(demoMock());
    const first = demo.graph.connections[0];
    circleFor(first.id).dispatchEvent(new Event('mouseenter'));
    const detail = document.querySelector('.hover-detail')?.textContent ?? '';
    assert.ok(detail.includes(`#${first.id}`));
    assert.ok(detail.includes(String(first.mass_product)));
});
