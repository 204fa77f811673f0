// Step-button policy: one command in flight, nothing after the run ends.
export class StepController {
    constructor(send) {
        this.send = send;
        this.pending = false;
        this.ended = false;
    }
    get canStep() {
        return !this.pending && !this.ended;
    }
    get isEnded() {
        return this.ended;
    }
    /** Returns true when a frame was actually sent (clicks debounce). */
    click() {
        if (!this.canStep)
            return false;
        this.pending = true;
        this.send(JSON.stringify({ type: "step" }));
        return true;
    }
    onReply(msg) {
        this.pending = false;
        if (msg.type === "ended")
            this.ended = true;
    }
    /** A fresh connection starts with no command in flight. */
    onReconnect() {
        this.pending = false;
    }
}
