// Page bootstrap: wire the socket, the step button, and the display together.
import { connect } from "./client.js";
import { parseServerMessage } from "./protocol.js";
import { clearBanner, findPage, renderState, showBanner } from "./render.js";
import { StepController } from "./stepper.js";
const page = findPage(document);
let client = null;
const stepper = new StepController((frame) => client?.send(frame));
function refreshButton() {
    page.stepButton.disabled = !stepper.canStep;
}
client = connect(`ws://${location.host}/ws`, {
    onOpen: () => {
        clearBanner(page);
        stepper.onReconnect();
        refreshButton();
    },
    onFrame: (text) => {
        const msg = parseServerMessage(text);
        if (msg === null) {
            showBanner(page, "malformed message from server");
            return;
        }
        stepper.onReply(msg);
        if (msg.type === "state") {
            renderState(document, page, msg);
        }
        else if (msg.type === "error") {
            showBanner(page, msg.message);
        }
        else {
            showBanner(page, "simulation ended");
        }
        refreshButton();
    },
    onDisconnect: (retryInMs) => {
        page.stepButton.disabled = true;
        showBanner(page, `connection lost, retrying in ${retryInMs / 1000}s`);
    },
});
page.stepButton.addEventListener("click", () => {
    stepper.click();
    refreshButton();
});
