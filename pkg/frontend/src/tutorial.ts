// Static primer shown at the bottom of the dashboard.

const SECTIONS: Array<[string, string]> = [
  [
    "What am I looking at?",
    "A tiny quantum classifier. Each 2D point (f0, f1) is turned into rotation " +
      "angles on a 2-qubit circuit by the selected encoder, a small trainable " +
      "circuit runs afterwards, and the readout is the expectation of Z on " +
      "qubit 0: a number in [-1, +1] that doubles as the class prediction.",
  ],
  [
    "Original Dataset / Encoder Map / Trained Map",
    "The dataset view shows the target labels over the feature grid. The " +
      "encoder map shows what the bare encoder circuit produces before any " +
      "training. The trained map is the model's live decision surface; watch " +
      "it bend toward the dataset as epochs stream in.",
  ],
  [
    "Encoded Data Evolution",
    "The same grid evaluated after each gate of the encoder, one column per " +
      "step, with the qubit-0 basis probabilities underneath. It shows where " +
      "in the circuit the feature information actually lands.",
  ],
  [
    "State Comparison Map",
    "Every grid cell's encoded quantum state, projected to two dimensions and " +
      "colored by its class. Clearly separated clouds mean the encoder moved " +
      "the two classes apart in state space before training even starts; " +
      "overlapping clouds mean no downstream circuit can fully split them.",
  ],
  [
    "Training",
    "Play creates a server-side session and streams one event per epoch. " +
      "Pause freezes it at the next epoch boundary, resume continues exactly " +
      "where it left off, stop ends it. Hyperparameter edits apply to the " +
      "next session; reloading the page reattaches to a running one.",
  ],
];

export function renderTutorial(container: HTMLElement): void {
  container.textContent = "";
  for (const [title, body] of SECTIONS) {
    const block = document.createElement("div");
    block.className = "tutorial-block";
    const heading = document.createElement("h3");
    heading.textContent = title;
    const text = document.createElement("p");
    text.textContent = body;
    block.appendChild(heading);
    block.appendChild(text);
    container.appendChild(block);
  }
}
