// Step-button policy: one command in flight, nothing after the run ends.

import type { ServerMessage } from "./protocol.js";

export type SendFrame = (frame: string) => void;

export class StepController {
  private pending = false;
  private ended = false;

  constructor(private readonly send: SendFrame) {}

  get canStep(): boolean {
    return !this.pending && !this.ended;
  }

  get isEnded(): boolean {
    return this.ended;
  }

  /** Returns true when a frame was actually sent (clicks debounce). */
  click(): boolean {
    if (!this.canStep) return false;
    this.pending = true;
    this.send(JSON.stringify({ type: "step" }));
    return true;
  }

  onReply(msg: ServerMessage): void {
    this.pending = false;
    if (msg.type === "ended") this.ended = true;
  }

  /** A fresh connection starts with no command in flight. */
  onReconnect(): void {
    this.pending = false;
  }
}
