import { ApiClient } from "./api.js";
import { AllocationPanel, RoutePanel, ScenarioPanel } from "./panels.js";

const client = new ApiClient("/api/v1");

const scenario = new ScenarioPanel(document.getElementById("scenario-panel")!, client);
new AllocationPanel(document.getElementById("allocation-panel")!, client);
new RoutePanel(document.getElementById("route-panel")!, client);

// solve the default scenario on load so the cards are never empty
void scenario.solve();

void client.health().then((ok) => {
  if (!ok) {
    const banner = document.getElementById("global-banner")!;
    banner.innerHTML = `<div class="banner error">decision service unreachable; panels will retry on input</div>`;
  }
});
