/** Small DOM construction helpers shared by the views. */

type Attrs = Record<string, string | boolean>;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Attrs = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    if (typeof value === "boolean") {
      if (value) {
        node.setAttribute(name, "");
      }
    } else {
      node.setAttribute(name, value);
    }
  }
  node.append(...children);
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) {
    node.removeChild(node.firstChild);
  }
}

export function option(value: string, label: string = value): HTMLOptionElement {
  const node = el("option", { value });
  node.textContent = label;
  return node;
}
