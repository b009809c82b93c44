import numpy as np
import plotly.express as px
import streamlit as st

try:
    from ..fixtures import FIRST_PAIR, SWITCHED_PAIR
    from ..latin import ls_with_subsquare, symmetric_unipotent_check, symmetric_unipotent_ls, verify_latin
    from ..services import worked_example
except Exception:  # pragma: no cover
    from designlab.fixtures import FIRST_PAIR, SWITCHED_PAIR  # type: ignore
    from designlab.latin import ls_with_subsquare, symmetric_unipotent_check, symmetric_unipotent_ls, verify_latin  # type: ignore
    from designlab.services import worked_example  # type: ignore


def _heatmap(cells: np.ndarray, title: str):
    fig = px.imshow(cells, text_auto=True, color_continuous_scale="Viridis", title=title)
    fig.update_layout(coloraxis_showscale=False, height=420)
    return fig


def render():
    st.header("🔲 Latin Kareler ve Alt Kareler")
    st.caption("Alt kareli latin kareler, simetrik unipotent kareler ve 9×9 anahtarlama örneği")

    tur = st.radio("Yapı", ["Alt kareli latin kare", "Simetrik unipotent kare", "9×9 örnek"], horizontal=True)

    if tur == "9×9 örnek":
        col1, col2 = st.columns(2)
        with col1:
            st.plotly_chart(_heatmap(FIRST_PAIR[0], "İlk çift (A)"), use_container_width=True)
            st.plotly_chart(_heatmap(SWITCHED_PAIR[0], "Anahtarlanmış çift (A)"), use_container_width=True)
        with col2:
            st.plotly_chart(_heatmap(FIRST_PAIR[1], "İlk çift (B)"), use_container_width=True)
            st.plotly_chart(_heatmap(SWITCHED_PAIR[1], "Anahtarlanmış çift (B)"), use_container_width=True)
        rapor = worked_example()
        if rapor.ok:
            st.success(f"✅ İki çift de ortogonal; {rapor.stats.get('switches', 0)} anahtarlama ikinci çifti veriyor")
        else:
            st.error("🚨 Örnek doğrulanamadı")
        st.dataframe(rapor.to_frame(), use_container_width=True)
        return

    col1, col2 = st.columns(2)
    with col1:
        q = st.number_input("Mertebe q", min_value=2, max_value=32, value=8, step=2 if tur != "Alt kareli latin kare" else 1)
    with col2:
        ell = st.number_input("Alt kare mertebesi ℓ", min_value=0, max_value=int(q) // 2, value=min(2, int(q) // 2))

    try:
        if tur == "Alt kareli latin kare":
            kare = ls_with_subsquare(int(q), int(ell))
            rapor = verify_latin(kare)
        else:
            kare = symmetric_unipotent_ls(int(q), int(ell))
            rapor = symmetric_unipotent_check(kare, int(ell))
    except ValueError as exc:
        st.warning(f"⚠️ {exc}")
        return

    st.plotly_chart(_heatmap(np.asarray(kare.cells), f"L({int(q)}, ℓ={int(ell)})"), use_container_width=True)
    if rapor.ok:
        st.success(f"✅ Doğrulandı ({rapor.checked} kontrol)")
    else:
        st.error(f"🚨 {len(rapor.violations)} ihlal")
    st.dataframe(rapor.to_frame(), use_container_width=True)
