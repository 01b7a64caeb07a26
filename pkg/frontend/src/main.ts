/** Browser entry point: wires URL state, the API client and the SVG view. */

import { ApiClient } from "./api.js";
import { renderDocument, renderGraph } from "./dom.js";
import { Explorer, RenderModel, StaleActionError } from "./explorer.js";
import { decodeState, encodeState, initialState, nextStage } from "./state.js";

const api = new ApiClient("");
const explorer = new Explorer(api);
let model: RenderModel | null = null;

const svg = document.querySelector<SVGSVGElement>("#graph")!;
const expandButton = document.querySelector<HTMLButtonElement>("#expand")!;
const centerInput = document.querySelector<HTMLInputElement>("#center")!;
const openButton = document.querySelector<HTMLButtonElement>("#open")!;
const documentPanel = document.querySelector<HTMLElement>("#document")!;
const filterBoxes = () =>
  Array.from(document.querySelectorAll<HTMLInputElement>("input[name='collection']"));

function syncUrl(): void {
  if (model !== null) {
    history.replaceState(null, "", `#${encodeState(model.state)}`);
  }
}

function show(next: RenderModel): void {
  model = next;
  renderGraph(svg, model, {
    onNodeClick: (nodeId) => void openDocument(nodeId),
  });
  const upcoming = nextStage(model.state.stage);
  expandButton.disabled = upcoming === null;
  expandButton.textContent =
    upcoming === null ? "fully expanded" : `expand to ${upcoming.toLowerCase()}`;
  syncUrl();
}

async function act(action: () => Promise<RenderModel>): Promise<void> {
  try {
    show(await action());
  } catch (error) {
    if (error instanceof StaleActionError) {
      return; // a newer action already rendered
    }
    documentPanel.textContent = `request failed: ${String(error)}`;
  }
}

async function openDocument(nodeId: string): Promise<void> {
  if (model === null) {
    return;
  }
  const panel = await explorer.openDocument(model, nodeId);
  renderDocument(documentPanel, panel.markup, (celex) => {
    if (model !== null) {
      void act(() => explorer.followReference(model!, celex));
    }
  });
}

expandButton.addEventListener("click", () => {
  if (model !== null) {
    void act(() => explorer.expand(model!));
  }
});

openButton.addEventListener("click", () => {
  const center = centerInput.value.trim();
  if (center) {
    void act(() => explorer.open(center));
  }
});

document.querySelector("#apply-filters")!.addEventListener("click", () => {
  if (model === null) {
    return;
  }
  const checked = filterBoxes().filter((b) => b.checked).map((b) => b.value);
  const all = checked.length === filterBoxes().length;
  void act(() => explorer.applyFilters(model!, all ? null : checked, null));
});

const fromUrl = location.hash.slice(1);
if (fromUrl) {
  void act(() => explorer.load(decodeState(fromUrl)));
} else if (centerInput.value) {
  void act(() => explorer.load(initialState(centerInput.value)));
}
