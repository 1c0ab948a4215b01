/** Panel controllers: wire inputs to the API client and re-render on data.
 *
 * One in-flight request per panel (the client aborts the previous one), a
 * 250 ms debounce on slider-driven solves, and non-blocking error banners
 * that keep the last good result on screen marked stale.
 */

import { ApiClient, DomainError, debounce } from "./api.js";
import {
  SLIDER_RANGES,
  clamp,
  initialAllocationState,
  initialRouteState,
  initialScenarioState,
} from "./state.js";
import { renderAllocationTable, renderErrorBanner, renderRoutePanel, renderScenarioCards } from "./render.js";

function el<T extends HTMLElement>(root: ParentNode, selector: string): T {
  const node = root.querySelector(selector);
  if (!node) throw new Error(`missing element: ${selector}`);
  return node as T;
}

export class ScenarioPanel {
  private state = initialScenarioState();
  private solveSoon = debounce(() => void this.solve(), 250);

  constructor(private root: HTMLElement, private client: ApiClient) {
    for (const name of ["ratio", "severity", "transmissibility"] as const) {
      const slider = el<HTMLInputElement>(root, `input[name=${name}]`);
      slider.addEventListener("input", () => {
        this.state[name] = clamp(Number(slider.value), SLIDER_RANGES[name]);
        el(root, `[data-readout=${name}]`).textContent = String(this.state[name]);
        this.solveSoon();
      });
    }
    const seedInput = el<HTMLInputElement>(root, "input[name=seed]");
    seedInput.addEventListener("change", () => {
      this.state.seed = Number(seedInput.value) || 0;
      this.solveSoon();
    });
  }

  async solve(): Promise<void> {
    try {
      this.state.last = await this.client.solveScenario({
        ratio: this.state.ratio,
        severity: this.state.severity,
        transmissibility: this.state.transmissibility,
        seed: this.state.seed,
      });
      this.state.stale = false;
      this.state.error = null;
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      this.state.error = err instanceof DomainError ? err.message : "service unreachable";
      this.state.stale = this.state.last !== null;
    }
    this.render();
  }

  render(): void {
    el(this.root, ".banner-slot").innerHTML = renderErrorBanner(this.state.error);
    el(this.root, ".results").innerHTML = renderScenarioCards(this.state.last, this.state.stale);
  }
}

export class AllocationPanel {
  private state = initialAllocationState();

  constructor(private root: HTMLElement, private client: ApiClient) {
    el<HTMLButtonElement>(root, "button[name=run]").addEventListener("click", () => void this.run());
  }

  private readInputs(): void {
    this.state.ff = el<HTMLSelectElement>(this.root, "select[name=ff]").value as "ff1" | "ff2";
    for (const name of ["alpha", "beta", "gamma", "budget", "seed"] as const) {
      const value = Number(el<HTMLInputElement>(this.root, `input[name=${name}]`).value);
      this.state[name] = Number.isNaN(value) ? this.state[name] : value;
    }
  }

  async run(): Promise<void> {
    this.readInputs();
    try {
      this.state.last = await this.client.allocate({
        ff: this.state.ff,
        alpha: this.state.alpha,
        beta: this.state.beta,
        gamma: this.state.gamma,
        budget: this.state.budget,
        seed: this.state.seed,
      });
      this.state.error = null;
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      this.state.error = err instanceof DomainError ? err.message : "service unreachable";
    }
    this.render();
  }

  render(): void {
    el(this.root, ".banner-slot").innerHTML = renderErrorBanner(this.state.error);
    el(this.root, ".results").innerHTML = renderAllocationTable(this.state.last);
  }
}

export class RoutePanel {
  private state = initialRouteState();

  constructor(private root: HTMLElement, private client: ApiClient) {
    el<HTMLButtonElement>(root, "button[name=route]").addEventListener("click", () => void this.run());
  }

  private readInputs(): void {
    this.state.ff = el<HTMLSelectElement>(this.root, "select[name=ff]").value as "ff3" | "ff4";
    this.state.normalized = el<HTMLInputElement>(this.root, "input[name=normalized]").checked;
    const kmeansOn = el<HTMLInputElement>(this.root, "input[name=kmeans]").checked;
    const kRaw = el<HTMLInputElement>(this.root, "input[name=k]").value.trim();
    this.state.kmeans = kmeansOn ? (kRaw === "" || kRaw === "auto" ? "auto" : Number(kRaw)) : null;
    this.state.seed = Number(el<HTMLInputElement>(this.root, "input[name=seed]").value) || 0;
  }

  async run(): Promise<void> {
    this.readInputs();
    el(this.root, ".results").innerHTML = `<p class="placeholder">routing&hellip;</p>`;
    try {
      this.state.last = await this.client.route({
        ff: this.state.ff,
        normalized: this.state.normalized,
        kmeans: this.state.kmeans,
        seed: this.state.seed,
      });
      this.state.error = null;
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      this.state.error = err instanceof DomainError ? err.message : "service unreachable";
    }
    this.render();
  }

  render(): void {
    el(this.root, ".banner-slot").innerHTML = renderErrorBanner(this.state.error);
    el(this.root, ".results").innerHTML = renderRoutePanel(this.state.last);
  }
}
