import { Client } from "./api.js";
import { ControlPanel } from "./controls.js";
import { SessionController } from "./session.js";
import { Store } from "./state.js";
import { renderTutorial } from "./tutorial.js";
import { Dashboard } from "./views.js";

async function boot(): Promise<void> {
  const client = new Client("");
  const store = new Store();
  const controller = new SessionController(client, store, window.sessionStorage);
  const dashboard = new Dashboard(document, client, store);
  const panel = new ControlPanel(document, store, controller);

  const [datasets, encoders] = await Promise.all([client.getDatasets(), client.getEncoders()]);
  panel.populate(datasets, encoders);
  await dashboard.start();
  renderTutorial(document.querySelector<HTMLElement>("#tutorial")!);

  // reattach to a run that survived a page reload; backlog replay rebuilds the chart
  await controller.restore();
}

void boot();
