import { ApiClient } from './api.js';
import { ExplorerApp } from './explorer.js';
const DEFAULT_BASE = 'http://127.0.0.1:8470';
async function boot() {
    const params = new URLSearchParams(window.location.search);
    const base = params.get('api') ?? DEFAULT_BASE;
    const api = new ApiClient(base);
    const picker = document.getElementById('session-picker');
    const reload = document.getElementById('reload-sessions');
    const status = document.getElementById('status');
    const container = document.getElementById('explorer');
    const app = new ExplorerApp(api, container);
    async function refreshSessions() {
        try {
            const sessions = await api.listSessions();
            picker.textContent = '';
            for (const session of sessions) {
                const option = document.createElement('option');
                option.value = session.session_id;
                option.textContent =
                    `${session.session_id.slice(0, 8)} (n=${session.n}, K=${session.k})`;
                picker.append(option);
            }
            status.textContent = sessions.length
                ? ''
                : `no sessions; start one with: torquecluster serve --dataset demo/three_blobs.csv --port 8470`;
            if (sessions.length) {
                await app.load(sessions[0].session_id);
            }
        }
        catch (error) {
            status.textContent = `cannot reach ${base}: ${String(error)}`;
        }
    }
    picker.addEventListener('change', () => void app.load(picker.value));
    reload.addEventListener('click', () => void refreshSessions());
    await refreshSessions();
}
void boot();
