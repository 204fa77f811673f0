// WebSocket wrapper with capped-backoff reconnection.
const DEFAULT_BACKOFF = [500, 1000, 2000, 4000, 8000];
export function connect(url, handlers, options = {}) {
    const makeSocket = options.makeSocket ?? ((u) => new WebSocket(u));
    const schedule = options.schedule ?? ((fn, ms) => setTimeout(fn, ms));
    const backoff = options.backoffMs ?? DEFAULT_BACKOFF;
    let socket = null;
    let attempt = 0;
    let closed = false;
    const dial = () => {
        socket = makeSocket(url);
        socket.onopen = () => {
            attempt = 0;
            handlers.onOpen();
        };
        socket.onmessage = (ev) => {
            if (typeof ev.data === "string")
                handlers.onFrame(ev.data);
        };
        socket.onclose = () => {
            socket = null;
            if (closed)
                return;
            const wait = backoff[Math.min(attempt, backoff.length - 1)] ?? 8000;
            attempt += 1;
            handlers.onDisconnect(wait);
            schedule(() => {
                if (!closed)
                    dial();
            }, wait);
        };
    };
    dial();
    return {
        send(frame) {
            socket?.send(frame);
        },
        close() {
            closed = true;
            socket?.close();
        },
    };
}
