// Control panel wiring: selection, hyperparameters, and the run buttons.
// Buttons reflect allowedControls() on every store change, so the panel can
// never offer an action the state machine forbids. Hyperparameter edits only
// apply to the next session; the current run's config is immutable.

import { allowedControls, Store } from "./state.js";
import { SessionController } from "./session.js";
import type { DatasetInfo, EncoderInfo } from "./types.js";

function option(value: string, text: string): HTMLOptionElement {
  const el = document.createElement("option");
  el.value = value;
  el.textContent = text;
  return el;
}

export class ControlPanel {
  private root: ParentNode;
  private store: Store;
  private controller: SessionController;
  private confirmStop: () => boolean;

  constructor(
    root: ParentNode,
    store: Store,
    controller: SessionController,
    confirmStop: () => boolean = () => window.confirm("A run is active. Stop it and switch?"),
  ) {
    this.root = root;
    this.store = store;
    this.controller = controller;
    this.confirmStop = confirmStop;
    store.subscribe(() => this.syncButtons());
  }

  private el<T extends HTMLElement>(selector: string): T {
    const found = this.root.querySelector<T>(selector);
    if (!found) throw new Error(`missing control ${selector}`);
    return found;
  }

  populate(datasets: DatasetInfo[], encoders: EncoderInfo[]): void {
    const datasetSelect = this.el<HTMLSelectElement>("#select-dataset");
    datasetSelect.textContent = "";
    for (const d of datasets) datasetSelect.appendChild(option(d.id, d.display_name));
    datasetSelect.value = this.store.state.selectedDataset;

    const encoderSelect = this.el<HTMLSelectElement>("#select-encoder");
    encoderSelect.textContent = "";
    for (const e of encoders) encoderSelect.appendChild(option(e.id, `${e.id} ${e.display_name}`));
    encoderSelect.value = this.store.state.selectedEncoder;

    this.wire();
    this.syncButtons();
  }

  private async guardSelection(apply: () => void, revert: () => void): Promise<void> {
    const session = this.store.state.session;
    const active = session && (session.runState === "running" || session.runState === "paused");
    if (active) {
      if (!this.confirmStop()) {
        revert();
        return;
      }
      await this.controller.stop();
    }
    apply();
  }

  private wire(): void {
    const datasetSelect = this.el<HTMLSelectElement>("#select-dataset");
    datasetSelect.addEventListener("change", () => {
      void this.guardSelection(
        () => this.store.update((s) => (s.selectedDataset = datasetSelect.value)),
        () => (datasetSelect.value = this.store.state.selectedDataset),
      );
    });

    const encoderSelect = this.el<HTMLSelectElement>("#select-encoder");
    encoderSelect.addEventListener("change", () => {
      void this.guardSelection(
        () =>
          this.store.update((s) => {
            s.selectedEncoder = encoderSelect.value;
            s.activeEvolutionStep = 0;
          }),
        () => (encoderSelect.value = this.store.state.selectedEncoder),
      );
    });

    const epochsInput = this.el<HTMLInputElement>("#input-epochs");
    const epochsSlider = this.el<HTMLInputElement>("#slider-epochs");
    const applyEpochs = (raw: string) => {
      const epochs = Math.max(1, Math.min(2000, Math.round(Number(raw) || 1)));
      epochsInput.value = String(epochs);
      epochsSlider.value = String(epochs);
      this.store.update((s) => (s.hyperparams.epochs = epochs));
    };
    epochsInput.addEventListener("change", () => applyEpochs(epochsInput.value));
    epochsSlider.addEventListener("input", () => applyEpochs(epochsSlider.value));

    const lrInput = this.el<HTMLInputElement>("#input-lr");
    const lrSlider = this.el<HTMLInputElement>("#slider-lr");
    const applyLr = (raw: string) => {
      const lr = Math.max(0.00001, Math.min(10, Number(raw) || 0.5));
      lrInput.value = String(lr);
      lrSlider.value = String(lr);
      this.store.update((s) => (s.hyperparams.learningRate = lr));
    };
    lrInput.addEventListener("change", () => applyLr(lrInput.value));
    lrSlider.addEventListener("input", () => applyLr(lrSlider.value));

    this.el<HTMLButtonElement>("#btn-play").addEventListener("click", () => void this.controller.play());
    this.el<HTMLButtonElement>("#btn-pause").addEventListener("click", () => void this.controller.pause());
    this.el<HTMLButtonElement>("#btn-resume").addEventListener("click", () => void this.controller.resume());
    this.el<HTMLButtonElement>("#btn-stop").addEventListener("click", () => void this.controller.stop());
  }

  syncButtons(): void {
    const allowed = allowedControls(this.store.state.session);
    this.el<HTMLButtonElement>("#btn-play").disabled = !allowed.has("play");
    this.el<HTMLButtonElement>("#btn-pause").disabled = !allowed.has("pause");
    this.el<HTMLButtonElement>("#btn-resume").disabled = !allowed.has("resume");
    this.el<HTMLButtonElement>("#btn-stop").disabled = !allowed.has("stop");
  }
}
