// WebSocket wrapper with capped-backoff reconnection.

export interface SocketLike {
  onopen: ((ev: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev: unknown) => void) | null;
  send(data: string): void;
  close(): void;
}

export interface ClientHandlers {
  onOpen: () => void;
  onFrame: (text: string) => void;
  onDisconnect: (retryInMs: number) => void;
}

export interface ClientOptions {
  makeSocket?: (url: string) => SocketLike;
  schedule?: (fn: () => void, ms: number) => void;
  backoffMs?: number[];
}

const DEFAULT_BACKOFF = [500, 1000, 2000, 4000, 8000];

export interface Client {
  send(frame: string): void;
  close(): void;
}

export function connect(
  url: string,
  handlers: ClientHandlers,
  options: ClientOptions = {},
): Client {
  const makeSocket =
    options.makeSocket ?? ((u: string) => new WebSocket(u) as unknown as SocketLike);
  const schedule = options.schedule ?? ((fn, ms) => setTimeout(fn, ms));
  const backoff = options.backoffMs ?? DEFAULT_BACKOFF;

  let socket: SocketLike | null = null;
  let attempt = 0;
  let closed = false;

  const dial = (): void => {
    socket = makeSocket(url);
    socket.onopen = () => {
      attempt = 0;
      handlers.onOpen();
    };
    socket.onmessage = (ev) => {
      if (typeof ev.data === "string") handlers.onFrame(ev.data);
    };
    socket.onclose = () => {
      socket = null;
      if (closed) return;
      const wait = backoff[Math.min(attempt, backoff.length - 1)] ?? 8000;
      attempt += 1;
      handlers.onDisconnect(wait);
      schedule(() => {
        if (!closed) dial();
      }, wait);
    };
  };
  dial();

  return {
    send(frame: string): void {
      socket?.send(frame);
    },
    close(): void {
      closed = true;
      socket?.close();
    },
  };
}
